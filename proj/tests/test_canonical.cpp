#include "doctest.h"

#include <string>
#include <vector>

#include "symmax/canonical.hpp"
#include "symmax/engine.hpp"
#include "symmax/oracle.hpp"
#include "symmax/rule.hpp"

using namespace symmax;

namespace {

std::string canon(const std::string& text) { return canonical_print(factorize(parse_rule(text))); }

}  // namespace

// ---------------------------------------------------------------------------
// canonical forms of the named rules
// ---------------------------------------------------------------------------

TEST_CASE("canonical prints of the registry") {
    CHECK(canon("@zero") == "(r3)*");
    CHECK(canon("@plus") == "(r1 r2 r3)*");
    CHECK(canon("@least") == "(r4 r5)* r1 r2 r3");
    CHECK(canon("@pess") == "(r4 r5)* r1 r3");
    CHECK(canon("@opt") == "(r4 r5)* r2 r3");
    CHECK(canon("@left") == "(r1 r3)*");
    CHECK(canon("@right") == "(r2 r3)*");
}

TEST_CASE("canonical structures") {
    const CanonicalRule least = factorize(parse_rule("@least"));
    CHECK(least.finite);
    REQUIRE(least.prefix.size() == 1);
    CHECK(least.prefix[0].omega.infinite_alternation);
    CHECK(least.prefix[0].a == 1);
    CHECK(least.prefix[0].b == 1);

    const CanonicalRule zero = factorize(parse_rule("@zero"));
    CHECK_FALSE(zero.finite);
    CHECK(zero.prefix.empty());
    REQUIRE(zero.cycle.size() == 1);
    CHECK(zero.cycle[0] == Factor{OmegaWord{}, 0, 0});
    // stream access unrolls the cycle
    CHECK(zero.at(0) == zero.cycle[0]);
    CHECK(zero.at(7) == zero.cycle[0]);

    const CanonicalRule mixed = factorize(parse_rule("r3 (r1 r2 r3)*"));
    CHECK_FALSE(mixed.finite);
    REQUIRE(mixed.prefix.size() == 1);
    CHECK(mixed.prefix[0] == Factor{OmegaWord{}, 0, 0});
    REQUIRE(mixed.cycle.size() == 1);
    CHECK(mixed.cycle[0] == Factor{OmegaWord{}, 1, 1});
    CHECK(mixed.at(0) == mixed.prefix[0]);
    CHECK(mixed.at(1) == mixed.cycle[0]);
    CHECK(mixed.at(2) == mixed.cycle[0]);
    CHECK(mixed.prefix_size() == 1);
}

TEST_CASE("starred letter groups become unbounded runs") {
    const CanonicalRule c = factorize(parse_rule("(r4* r3)*"));
    CHECK(c.finite);
    REQUIRE(c.prefix.size() == 1);
    REQUIRE(c.prefix[0].omega.runs.size() == 1);
    CHECK(c.prefix[0].omega.runs[0] == Run{4, kInfinity});
    CHECK(c.prefix[0].omega.absorbing());
    CHECK_FALSE(c.prefix[0].omega.infinite_alternation);
    CHECK(canonical_print(c) == "r4* r3");
}

TEST_CASE("a starred group with both deep letters is the alternating word") {
    CHECK(canon("(r4 r5)* r3") == "(r4 r5)* r3");
    // letter order and single-letter padding inside the group do not matter
    CHECK(canon("(r5 r4)* r3") == "(r4 r5)* r3");
    CHECK(canon("r4 (r4 r5)* r5 r3 r1 r3") == "(r4 r5)* r3");  // absorbed and truncated
}

// ---------------------------------------------------------------------------
// equivalence and well-formedness
// ---------------------------------------------------------------------------

TEST_CASE("the flagship equivalence") {
    CHECK(equivalent(parse_rule("(r4 r5)*(r1 r2 r3)*"), parse_rule("(r4 r5)* r1 r2 r3")));
}

TEST_CASE("equivalences from normalization") {
    // top-trim letters collapse to presence bits, order irrelevant
    CHECK(equivalent(parse_rule("r1 r1 r2 r3 (r1 r2 r3)*"),
                     parse_rule("r2 r1 r3 (r1 r2 r3)*")));
    // second-level deletions keep their multiplicity and slide past top-trim
    // letters, which act on a different level
    CHECK(equivalent(parse_rule("r4 r1 r4 r3 r3*"), parse_rule("r4 r4 r1 r3 r3*")));
    // primitive cycle
    CHECK(equivalent(parse_rule("(r1 r3 r1 r3)*"), parse_rule("(r1 r3)*")));
    // prefix pulled back into the cycle
    CHECK(equivalent(parse_rule("r1 r3 (r1 r3)*"), parse_rule("(r1 r3)*")));
    CHECK(equivalent(parse_rule("r3 (r1 r3 r3)*"), parse_rule("(r3 r1 r3)*")));
    // nested stars collapse
    CHECK(equivalent(parse_rule("((r1 r3)*)*"), parse_rule("(r1 r3)*")));
    CHECK(equivalent(parse_rule("(r3 (r1 r2 r3)*)*"), parse_rule("r3 (r1 r2 r3)*")));
    // dead code after a closed stream
    CHECK(equivalent(parse_rule("(r1 r3)* (r4 r5)*"), parse_rule("(r1 r3)*")));
    // truncation at the first absorbing factor
    CHECK(equivalent(parse_rule("r4* r3 r1 r2 r3"), parse_rule("(r4* r3)*")));
    CHECK_FALSE(equivalent(parse_rule("@pess"), parse_rule("@opt")));
    CHECK_FALSE(equivalent(parse_rule("@zero"), parse_rule("@plus")));
}

TEST_CASE("well-formedness verdicts") {
    CHECK(well_formed(parse_rule("@zero")));
    CHECK(well_formed(parse_rule("(r1 r3)*(r4 r5)*")));
    CHECK(well_formed(parse_rule("r4* r3")));
    CHECK(well_formed(parse_rule("(r4 r5)* r1 r2 r3")));
    CHECK(well_formed(parse_rule("r5 r4* r5 r3 (r4 r5)* r1 r2 r3")));

    CHECK_FALSE(well_formed(parse_rule("r2 r3 r1")));
    CHECK_FALSE(well_formed(parse_rule("(r4 r5)* r1 r2")));
    CHECK_FALSE(well_formed(parse_rule("r1")));
    CHECK_FALSE(well_formed(parse_rule("")));
    CHECK_FALSE(well_formed(parse_rule("r4*")));
    CHECK_FALSE(well_formed(parse_rule("\xce\xb5*")));
    CHECK_FALSE(well_formed(parse_rule("r4 r5 r3")));  // finite deep word, open stream

    CHECK_THROWS_AS(factorize(parse_rule("r2 r3 r1")), NotWellFormed);
    CHECK_THROWS_AS(equivalent(parse_rule("r2 r3 r1"), parse_rule("@zero")), NotWellFormed);
    CHECK_THROWS_AS(equivalent(parse_rule("@zero"), parse_rule("r1")), NotWellFormed);
}

// ---------------------------------------------------------------------------
// a mid-word unbounded run is not absorbing
// ---------------------------------------------------------------------------

TEST_CASE("factors after a non-suffix unbounded run stay observable") {
    const RuleExpr deep = parse_rule("r5 r4* r5 r3 (r4 r5)* r1 r2 r3");
    const CanonicalRule c = factorize(deep);
    REQUIRE(c.prefix.size() == 2);  // not truncated to one factor
    CHECK(c.prefix[0].omega.runs ==
          std::vector<Run>{Run{5, 1}, Run{4, kInfinity}, Run{5, 1}});
    CHECK_FALSE(c.prefix[0].omega.absorbing());
    CHECK(c.prefix[1].omega.infinite_alternation);
    CHECK(canonical_print(c) == "r5 r4* r5 r3 (r4 r5)* r1 r2 r3");

    // when the first factor's cancellation empties the top level exactly,
    // the stream continues: the second factor's trim bits act on the next
    // level and are observable against a tail without them
    const PsiEncoding sigma = PsiEncoding::from_pairs({{1, 1}, {0, 1}, {0, 1}, {2, 1}});
    CHECK(run(deep, sigma).residue == PsiEncoding{});
    CHECK(run(parse_rule("r5 r4* r5 r3 (r3)*"), sigma).residue ==
          PsiEncoding::from_levels({Level{1, 1, 0}}));
    // and when the cancellation leaves a one-signed top, the tail is dead:
    // the first factor alone separates this rule from the bottom rule
    CHECK(run(deep, PsiEncoding::from_pairs({{2, 1}})).residue ==
          PsiEncoding::from_pairs({{1, 0}}));
    CHECK(run(parse_rule("@least"), PsiEncoding::from_pairs({{2, 1}})).residue == PsiEncoding{});
    CHECK_FALSE(equivalent(deep, parse_rule("@least")));
}

// ---------------------------------------------------------------------------
// printing and round trips
// ---------------------------------------------------------------------------

TEST_CASE("factor printing") {
    CHECK(canonical_print(Factor{OmegaWord{}, 0, 0}) == "r3");
    CHECK(canonical_print(Factor{OmegaWord{}, 1, 1}) == "r1 r2 r3");
    CHECK(canonical_print(Factor{OmegaWord{true, {}}, 1, 1}) == "(r4 r5)* r1 r2 r3");
    CHECK(canonical_print(Factor{OmegaWord{false, {Run{4, 2}, Run{5, 1}}}, 0, 1}) ==
          "r4 r4 r5 r2 r3");
    CHECK(canonical_print(Factor{OmegaWord{false, {Run{5, kInfinity}}}, 1, 0}) == "r5* r1 r3");
}

TEST_CASE("canonicalization is idempotent and reparsable") {
    for (const char* text : {
             "@zero", "@plus", "@least", "@pess", "@opt", "@left", "@right",
             "(r4* r3)*", "r5 r4* r5 r3 (r4 r5)* r1 r2 r3", "r3 (r1 r2 r3)*",
             "(r4 r5)*(r1 r2 r3)*", "r4 r5 r3 @zero", "r3 (r1 r3 r3)*",
         }) {
        const CanonicalRule c = factorize(parse_rule(text));
        const RuleExpr back = to_rule_expr(c);
        CHECK(factorize(back) == c);
        CHECK(canonical_print(factorize(back)) == canonical_print(c));
    }
}

TEST_CASE("canonicalization preserves run semantics") {
    const std::vector<std::string> words = {
        "@zero", "@plus", "@least", "@pess", "@opt", "@left", "@right",
        "(r4 r5)*(r1 r2 r3)*", "r4* r3 r1 r2 r3", "r5 r4* r5 r3 (r4 r5)* r1 r2 r3",
        "r4 (r4 r5)* r5 r3 r1 r3", "(r3 (r1 r2 r3)*)*", "r3 (r1 r3 r3)*",
    };
    for (const std::string& text : words) {
        const RuleExpr original = parse_rule(text);
        const RuleExpr canonicalized = to_rule_expr(factorize(original));
        for_each_sequence(3, 3, false, [&](const PsiEncoding& e) {
            const RunResult a = run(original, e);
            const RunResult b = run(canonicalized, e);
            CHECK(a.residue == b.residue);
            CHECK(a.profile == b.profile);
            return true;
        });
    }
}
