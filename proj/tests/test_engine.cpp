#include "doctest.h"

#include <random>
#include <vector>

#include "symmax/core.hpp"
#include "symmax/engine.hpp"
#include "symmax/oracle.hpp"
#include "symmax/rule.hpp"

using namespace symmax;

namespace {

PsiEncoding psi(const std::vector<std::pair<int, int>>& pairs) {
    return PsiEncoding::from_pairs(pairs);
}

}  // namespace

// ---------------------------------------------------------------------------
// elementary rules
// ---------------------------------------------------------------------------

TEST_CASE("elementary rules on the top level") {
    CHECK(apply_elementary(RuleLetter::r1, psi({{3, 2}})) == psi({{1, 2}}));
    CHECK(apply_elementary(RuleLetter::r2, psi({{3, 2}})) == psi({{3, 1}}));
    CHECK(apply_elementary(RuleLetter::r3, psi({{3, 2}})) == psi({{1, 0}}));
    CHECK(apply_elementary(RuleLetter::r3, psi({{2, 2}})) == PsiEncoding{});
    CHECK(apply_elementary(RuleLetter::r3, psi({{2, 2}, {1, 1}})) == psi({{1, 1}}));
    // already-trimmed counts are left alone
    CHECK(apply_elementary(RuleLetter::r1, psi({{1, 2}})) == psi({{1, 2}}));
    CHECK(apply_elementary(RuleLetter::r2, psi({{1, 1}})) == psi({{1, 1}}));
}

TEST_CASE("elementary rules on the second level") {
    CHECK(apply_elementary(RuleLetter::r4, psi({{1, 1}, {2, 1}})) == psi({{1, 1}, {0, 1}}));
    CHECK(apply_elementary(RuleLetter::r5, psi({{1, 1}, {2, 1}})) == psi({{1, 1}, {2, 0}}));
    // clearing the only-occupied side drops the level
    CHECK(apply_elementary(RuleLetter::r5, psi({{1, 1}, {0, 2}})) ==
          PsiEncoding::from_levels({Level{2, 1, 1}}));
    // no matching occurrences below the top: identity
    CHECK(apply_elementary(RuleLetter::r4, psi({{1, 1}, {0, 2}})) == psi({{1, 1}, {0, 2}}));
    CHECK(apply_elementary(RuleLetter::r4, psi({{1, 1}})) == psi({{1, 1}}));
}

TEST_CASE("every elementary rule is the identity on an inactive top") {
    const PsiEncoding inactive = psi({{2, 0}, {1, 1}});
    for (int n = 1; n <= 5; ++n) {
        CHECK(apply_elementary(static_cast<RuleLetter>(n), inactive) == inactive);
    }
    const PsiEncoding negOnly = psi({{0, 3}, {2, 2}});
    for (int n = 1; n <= 5; ++n) {
        CHECK(apply_elementary(static_cast<RuleLetter>(n), negOnly) == negOnly);
    }
}

// ---------------------------------------------------------------------------
// basic (single-unit) rules
// ---------------------------------------------------------------------------

TEST_CASE("basic steps remove exactly one occurrence") {
    CHECK(apply_basic({1, 1}, psi({{3, 2}})) == psi({{2, 2}}));
    CHECK(apply_basic({2, 1}, psi({{3, 2}})) == psi({{3, 1}}));
    CHECK(apply_basic({3, 1}, psi({{1, 1}})) == PsiEncoding{});
    CHECK(apply_basic({3, 1}, psi({{2, 1}})) == psi({{1, 0}}));
    CHECK(apply_basic({4, 2}, psi({{1, 1}, {1, 1}})) == psi({{1, 1}, {0, 1}}));
    CHECK(apply_basic({5, 2}, psi({{1, 1}, {1, 1}})) == psi({{1, 1}, {1, 0}}));
    // emptied levels are dropped (and magnitudes keep their identity)
    CHECK(apply_basic({4, 2}, psi({{1, 1}, {1, 0}, {1, 1}})) ==
          PsiEncoding::from_levels({Level{3, 1, 1}, Level{1, 1, 1}}));
}

TEST_CASE("basic steps carry no top-activity guard") {
    // the top has a single sign, yet deeper deletions still apply
    CHECK(apply_basic({5, 2}, psi({{2, 0}, {1, 1}})) == psi({{2, 0}, {1, 0}}));
    // and kind 1 acts on a one-signed top as long as a survivor remains
    CHECK(apply_basic({1, 1}, psi({{2, 0}})) == psi({{1, 0}}));
}

TEST_CASE("basic steps throw when their requirement is unmet") {
    CHECK_THROWS_AS(apply_basic({1, 1}, psi({{1, 2}})), PreconditionFailed);
    CHECK_THROWS_AS(apply_basic({2, 1}, psi({{1, 1}})), PreconditionFailed);
    CHECK_THROWS_AS(apply_basic({3, 1}, psi({{2, 0}})), PreconditionFailed);
    CHECK_THROWS_AS(apply_basic({3, 1}, PsiEncoding{}), PreconditionFailed);
    CHECK_THROWS_AS(apply_basic({4, 1}, psi({{1, 1}, {1, 1}})), PreconditionFailed);
    CHECK_THROWS_AS(apply_basic({4, 5}, psi({{1, 1}, {1, 1}})), PreconditionFailed);
    CHECK_THROWS_AS(apply_basic({4, 2}, psi({{1, 1}, {0, 2}})), PreconditionFailed);
    CHECK_THROWS_AS(apply_basic({5, 2}, psi({{1, 1}, {2, 0}})), PreconditionFailed);
}

// ---------------------------------------------------------------------------
// running words
// ---------------------------------------------------------------------------

TEST_CASE("evaluate frozen examples") {
    const SignedSequence s = parse_sequence("3,2,1,0,-2,-3,-3");
    CHECK(evaluate(parse_rule("@zero"), s) == -3);
    CHECK(evaluate(parse_rule("@plus"), s) == 1);
    CHECK(evaluate(parse_rule("@least"), parse_sequence("3,2,1,-2,-3,-3")) == 0);
    // an associative sequence needs no deletions at all
    CHECK(evaluate(RuleExpr{}, parse_sequence("5,3,-3")) == 5);
}

TEST_CASE("a rule that fails to make the input associative throws") {
    // one cancellation pass leaves a still-ambiguous top level
    CHECK_THROWS_AS(evaluate(make_letter(RuleLetter::r3), decode(psi({{2, 2}, {2, 1}}))),
                    NotMadeAssociative);
    CHECK_THROWS_AS(evaluate(RuleExpr{}, parse_sequence("-3,3,2")), NotMadeAssociative);
}

TEST_CASE("run is the identity exactly on inactive encodings") {
    for (const auto& [name, rule] : registry()) {
        for (const PsiEncoding& e : enumerate_sequences(2, 2, false)) {
            const RunResult r = run(rule, e);
            if (!e.active()) {
                CHECK(r.residue == e);
                for (const Level& lv : r.profile.deleted) {
                    CHECK(lv.pos == 0);
                    CHECK(lv.neg == 0);
                }
            } else {
                CHECK(r.residue.total_multiplicity() < e.total_multiplicity());
            }
        }
        CHECK(run(rule, PsiEncoding{}).residue == PsiEncoding{});
    }
}

TEST_CASE("the least rule deletes everything active") {
    const RuleExpr least = parse_rule("@least");
    for (const PsiEncoding& e : enumerate_sequences(3, 3, true)) {
        CHECK(run(least, e).residue == PsiEncoding{});
    }
}

TEST_CASE("deletion profiles account occurrences against the start") {
    const RunResult r = run(parse_rule("@zero"), psi({{1, 1}, {1, 0}}));
    REQUIRE(r.profile.deleted.size() == 2);
    CHECK(r.profile.deleted[0] == Level{2, 1, 1});
    CHECK(r.profile.deleted[1] == Level{1, 0, 0});
    CHECK(r.residue == PsiEncoding::from_levels({Level{1, 1, 0}}));

    const RunResult all = run(parse_rule("@least"), psi({{1, 1}, {1, 0}}));
    CHECK(all.residue == PsiEncoding{});
    CHECK(all.profile.deleted == std::vector<Level>{Level{2, 1, 1}, Level{1, 1, 0}});

    CHECK(profile_contains(all.profile, r.profile));
    CHECK_FALSE(profile_contains(r.profile, all.profile));
    CHECK(profile_contains(r.profile, r.profile));

    const RunResult other = run(parse_rule("@zero"), psi({{1, 1}}));
    CHECK_THROWS_AS(profile_contains(r.profile, other.profile), MismatchedBase);
}

TEST_CASE("traces record only applied actions and chain together") {
    RunResult r = run(parse_rule("@least"), psi({{1, 2}, {1, 1}, {1, 0}}), true);
    REQUIRE(!r.trace.empty());
    for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) {
        CHECK(r.trace[i].after == r.trace[i + 1].before);
        CHECK(r.trace[i].before != r.trace[i].after);
    }
    CHECK(r.trace.front().before == psi({{1, 2}, {1, 1}, {1, 0}}));
    CHECK(r.trace.back().after == r.residue);
    // determinism
    RunResult again = run(parse_rule("@least"), psi({{1, 2}, {1, 1}, {1, 0}}), true);
    CHECK(again.residue == r.residue);
    CHECK(again.trace.size() == r.trace.size());
}

TEST_CASE("star termination: trace length is bounded by the multiplicity") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> letter(1, 5);
    const std::vector<RuleExpr> pool = {
        parse_rule("(r1 r3)*"), parse_rule("(r4 r5)* r1 r2 r3"), parse_rule("(r3 (r1 r2 r3)*)*"),
        parse_rule("r5 r4* r5 r3 (r4 r5)* r1 r2 r3"), parse_rule("((r4* r5* r3)*)*")};
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
    std::uniform_int_distribution<int> q(1, 5);
    std::uniform_int_distribution<int> c(0, 3);
    for (int t = 0; t < 300; ++t) {
        std::vector<std::pair<int, int>> pairs;
        const int levels = q(rng);
        for (int i = 0; i < levels; ++i) {
            int p = c(rng), m = c(rng);
            if (p == 0 && m == 0) p = 1;
            pairs.emplace_back(p, m);
        }
        const PsiEncoding e = psi(pairs);
        const RunResult r = run(pool[static_cast<std::size_t>(pick(rng))], e, true);
        // every applied action deletes at least one occurrence, which both
        // bounds the trace and proves the star loops terminated
        CHECK(r.trace.size() <=
              static_cast<std::size_t>(e.total_multiplicity() - r.residue.total_multiplicity()));
    }
}

// ---------------------------------------------------------------------------
// compiled words agree with the interpreter
// ---------------------------------------------------------------------------

TEST_CASE("CompiledRule reproduces run() residues and profiles") {
    std::vector<RuleExpr> rules;
    for (const auto& [name, rule] : registry()) rules.push_back(rule);
    rules.push_back(parse_rule("r5 r4* r5 r3 (r4 r5)* r1 r2 r3"));
    rules.push_back(parse_rule("r4 r5 r1 r3 (r3)*"));
    rules.push_back(RuleExpr{});

    std::vector<Level> out;
    for (const RuleExpr& rule : rules) {
        const CompiledRule compiled(rule);
        for (const PsiEncoding& e : enumerate_sequences(2, 2, false)) {
            const RunResult reference = run(rule, e);
            compiled.run_profile(e, out);
            CHECK(out == reference.profile.deleted);
            CHECK(compiled.run_residue(e) == reference.residue);
        }
    }
}

// ---------------------------------------------------------------------------
// basic words
// ---------------------------------------------------------------------------

TEST_CASE("basic words skip unmet steps instead of throwing") {
    const BasicWord w = basic_step({1, 1});
    CHECK(run_basic_word(w, psi({{1, 0}})) == psi({{1, 0}}));
    CHECK(run_basic_word(basic_concat({}), psi({{2, 2}})) == psi({{2, 2}}));
    CHECK(run_basic_word(basic_concat({}), PsiEncoding{}) == PsiEncoding{});
}

TEST_CASE("a single-unit cascade pulls out the second-level survivor") {
    // delete one -n3, then repeatedly: trim +n1 down, trim -n1 down, cancel a
    // pair; the loop eats whole levels until one side survives.
    const BasicWord w = basic_concat({
        basic_step({5, 3}),
        basic_star(basic_concat({
            basic_star(basic_step({1, 1})),
            basic_star(basic_step({2, 1})),
            basic_step({3, 1}),
        })),
    });

    const PsiEncoding s1 = psi({{2, 3}, {1, 0}, {0, 1}, {2, 1}});
    const PsiEncoding r1 = run_basic_word(w, s1);
    // The loop stops as soon as the top goes one-signed; the bottom level is
    // never touched, but it no longer affects the value.
    CHECK(r1 == PsiEncoding::from_levels({Level{3, 1, 0}, Level{1, 2, 1}}));
    CHECK(value(r1) == 3);  // the survivor sits at the second magnitude

    const PsiEncoding s2 = psi({{2, 3}, {1, 1}, {0, 1}, {2, 0}});
    const PsiEncoding r2 = run_basic_word(w, s2);
    CHECK(r2 == PsiEncoding::from_levels({Level{1, 1, 0}}));
    CHECK(value(r2) == 1);  // here the cascade reaches the fourth magnitude
}

TEST_CASE("elementary rules match single-unit fixpoints on their domain") {
    auto star1 = [](int kind, int position) {
        return basic_star(basic_step({kind, position}));
    };
    for (const PsiEncoding& e : enumerate_sequences(3, 3, false)) {
        // pair cancellation: iterating one-pair deletion crosses levels the
        // same way iterating the elementary cancellation does
        CHECK(run(parse_rule("r3*"), e).residue == run_basic_word(star1(3, 1), e));
        if (!e.active()) continue;
        // top trims agree wherever the top is active
        CHECK(apply_elementary(RuleLetter::r1, e) == run_basic_word(star1(1, 1), e));
        CHECK(apply_elementary(RuleLetter::r2, e) == run_basic_word(star1(2, 1), e));
        // starred second-level clearing agrees with the starred letter
        CHECK(run(parse_rule("r4*"), e).residue == run_basic_word(star1(4, 2), e));
        CHECK(run(parse_rule("r5*"), e).residue == run_basic_word(star1(5, 2), e));
        // and with a single application when the level survives it
        if (e.size() >= 2 && e.levels[1].neg > 0) {
            CHECK(apply_elementary(RuleLetter::r4, e) == run_basic_word(star1(4, 2), e));
        }
        if (e.size() >= 2 && e.levels[1].pos > 0) {
            CHECK(apply_elementary(RuleLetter::r5, e) == run_basic_word(star1(5, 2), e));
        }
    }
}

// ---------------------------------------------------------------------------
// extraction-rule construction
// ---------------------------------------------------------------------------

TEST_CASE("extraction rule frozen shapes") {
    CHECK(print_rule(make_extraction_rule(psi({{3, 2}}), 1, +1)) == "r2 r3");
    CHECK(print_rule(make_extraction_rule(psi({{3, 2}}), 1, -1)) == "r1 r3");
    CHECK(print_rule(make_extraction_rule(psi({{1, 1}, {0, 2}, {1, 1}}), 3, +1)) ==
          "r5 r5 r1 r2 r3");
}

TEST_CASE("extraction rule preconditions") {
    CHECK_THROWS_AS(make_extraction_rule(psi({{1, 2}}), 1, +1), PreconditionFailed);
    CHECK_THROWS_AS(make_extraction_rule(psi({{2, 1}}), 1, -1), PreconditionFailed);
    CHECK_THROWS_AS(make_extraction_rule(psi({{2, 0}}), 1, +1), PreconditionFailed);
    CHECK_THROWS_AS(make_extraction_rule(psi({{1, 1}}), 2, +1), PreconditionFailed);
    CHECK_THROWS_AS(make_extraction_rule(psi({{1, 1}, {0, 1}}), 2, +1), PreconditionFailed);
    CHECK_THROWS_AS(make_extraction_rule(psi({{1, 1}}), 1, +2), PreconditionFailed);
}

TEST_CASE("every valid extraction target is reached exactly") {
    for (const PsiEncoding& e : enumerate_sequences(3, 2, true)) {
        if (fulfills_associativity(e)) continue;
        const int q = static_cast<int>(e.size());
        for (int k = 1; k <= q; ++k) {
            for (int delta : {+1, -1}) {
                const Level& lv = e.levels[static_cast<std::size_t>(k - 1)];
                const int want = delta > 0 ? lv.pos : lv.neg;
                const bool valid = (k == 1) ? want > 1 : want > 0;
                if (!valid) continue;
                const RuleExpr rule = make_extraction_rule(e, k, delta);
                CHECK(evaluate(rule, decode(e)) == delta * lv.magnitude);
            }
        }
    }
}
