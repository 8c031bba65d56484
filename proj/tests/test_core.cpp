#include "doctest.h"

#include <set>
#include <vector>

#include "symmax/core.hpp"

using namespace symmax;

// ---------------------------------------------------------------------------
// the binary operation
// ---------------------------------------------------------------------------

TEST_CASE("symmax frozen examples") {
    CHECK(symmax::symmax(-3, 3) == 0);
    CHECK(symmax::symmax(3, -3) == 0);
    CHECK(symmax::symmax(0, 0) == 0);
    CHECK(symmax::symmax(0, 7) == 7);
    CHECK(symmax::symmax(-7, 0) == -7);
    CHECK(symmax::symmax(3, 2) == 3);
    CHECK(symmax::symmax(2, 3) == 3);
    CHECK(symmax::symmax(-3, 2) == -3);
    CHECK(symmax::symmax(-5, 3) == -5);
    CHECK(symmax::symmax(5, -3) == 5);
    CHECK(symmax::symmax(3, 3) == 3);
    CHECK(symmax::symmax(-4, -2) == -4);
    CHECK(symmax::symmax(-4, -4) == -4);
    // The two bracketings that witness nonassociativity on (-3, 3, 2).
    CHECK(symmax::symmax(symmax::symmax(-3, 3), 2) == 2);
    CHECK(symmax::symmax(-3, symmax::symmax(3, 2)) == 0);
}

TEST_CASE("symmax laws on [-6,6]^2") {
    for (int a = -6; a <= 6; ++a) {
        for (int b = -6; b <= 6; ++b) {
            const int r = symmax::symmax(a, b);
            // commutativity
            CHECK(r == symmax::symmax(b, a));
            // 0 neutral
            CHECK(symmax::symmax(a, 0) == a);
            // cancellation
            CHECK(symmax::symmax(a, -a) == 0);
            // sign flip distributes
            CHECK(symmax::symmax(-a, -b) == -r);
            // magnitude law: |a (x) b| = max(|a|,|b|) unless the arguments cancel
            if (b != -a) CHECK(std::abs(r) == std::max(std::abs(a), std::abs(b)));
            // closure: result is one of the arguments or 0
            CHECK((r == a || r == b || r == 0));
        }
    }
}

TEST_CASE("symmax associates exactly when no full cancellation is possible") {
    for (int a = -4; a <= 4; ++a) {
        for (int b = -4; b <= 4; ++b) {
            for (int c = -4; c <= 4; ++c) {
                const int lhs = symmax::symmax(symmax::symmax(a, b), c);
                const int rhs = symmax::symmax(a, symmax::symmax(b, c));
                const int mx = std::max({a, b, c});
                const int mn = std::min({a, b, c});
                if (mx != -mn) CHECK(lhs == rhs);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// sequences and the level encoding
// ---------------------------------------------------------------------------

TEST_CASE("SignedSequence drops zeros, keeps order") {
    const SignedSequence s = SignedSequence::of({3, 0, 2, 0, -1});
    CHECK(s.values == std::vector<int>{3, 2, -1});
    CHECK(SignedSequence::of({0, 0}).empty());
    CHECK(SignedSequence::of({}).empty());
}

TEST_CASE("encode counts occurrences per magnitude, top-down") {
    const PsiEncoding e = encode(SignedSequence::of({1, 3, -3, 2, -2, -2, 3, 1, 1, 1}));
    REQUIRE(e.size() == 3);
    CHECK(e.levels[0] == Level{3, 2, 1});
    CHECK(e.levels[1] == Level{2, 1, 2});
    CHECK(e.levels[2] == Level{1, 4, 0});
    CHECK(e == PsiEncoding::from_pairs({{2, 1}, {1, 2}, {4, 0}}));
    CHECK(e.total_multiplicity() == 10);

    CHECK(encode(SignedSequence{}).empty());
    // zeros vanish before encoding
    CHECK(encode(SignedSequence::of({0, 5, 0})) == PsiEncoding::from_levels({Level{5, 1, 0}}));
}

TEST_CASE("decode round-trips through encode") {
    const PsiEncoding e = PsiEncoding::from_pairs({{2, 1}, {0, 2}, {3, 0}});
    CHECK(encode(decode(e)) == e);
    CHECK(decode(PsiEncoding{}).empty());
    // magnitudes can be sparse
    const PsiEncoding sparse = PsiEncoding::from_levels({Level{9, 1, 1}, Level{4, 0, 2}});
    CHECK(encode(decode(sparse)) == sparse);
}

TEST_CASE("from_levels validates the encoding invariants") {
    CHECK_THROWS_AS(PsiEncoding::from_levels({Level{2, 0, 0}}), PreconditionFailed);
    CHECK_THROWS_AS(PsiEncoding::from_levels({Level{0, 1, 0}}), PreconditionFailed);
    CHECK_THROWS_AS(PsiEncoding::from_levels({Level{-3, 1, 0}}), PreconditionFailed);
    CHECK_THROWS_AS(PsiEncoding::from_levels({Level{2, -1, 0}}), PreconditionFailed);
    CHECK_THROWS_AS(PsiEncoding::from_levels({Level{2, 1, 0}, Level{2, 0, 1}}),
                    PreconditionFailed);
    CHECK_THROWS_AS(PsiEncoding::from_levels({Level{1, 1, 0}, Level{2, 0, 1}}),
                    PreconditionFailed);
    CHECK_NOTHROW(PsiEncoding::from_levels({Level{7, 1, 1}, Level{2, 0, 1}}));
    CHECK_THROWS_AS(PsiEncoding::from_pairs({{1, 1}, {0, 0}}), PreconditionFailed);
}

TEST_CASE("active means the top level carries both signs") {
    CHECK_FALSE(PsiEncoding{}.active());
    CHECK_FALSE(PsiEncoding::from_pairs({{2, 0}}).active());
    CHECK_FALSE(PsiEncoding::from_pairs({{0, 3}, {1, 1}}).active());
    CHECK(PsiEncoding::from_pairs({{1, 1}}).active());
    CHECK(PsiEncoding::from_pairs({{2, 3}, {1, 0}}).active());
}

// ---------------------------------------------------------------------------
// value-level associativity and the value function
// ---------------------------------------------------------------------------

TEST_CASE("fulfills_associativity on sequences") {
    CHECK(fulfills_associativity(SignedSequence::of({3, 2})));
    CHECK(fulfills_associativity(SignedSequence::of({-3, 3})));   // length 2
    CHECK_FALSE(fulfills_associativity(SignedSequence::of({-3, 3, 2})));
    CHECK(fulfills_associativity(SignedSequence::of({5, 3, -3})));
    CHECK(fulfills_associativity(SignedSequence::of({1, 1, 1})));
    CHECK(fulfills_associativity(SignedSequence{}));
    CHECK_FALSE(fulfills_associativity(SignedSequence::of({2, -2, 1, 1})));
}

TEST_CASE("fulfills_associativity on encodings matches the sequence form") {
    CHECK(fulfills_associativity(PsiEncoding::from_pairs({{1, 1}})));       // mult 2
    CHECK_FALSE(fulfills_associativity(PsiEncoding::from_pairs({{2, 1}})));
    CHECK(fulfills_associativity(PsiEncoding::from_pairs({{0, 3}})));
    CHECK(fulfills_associativity(PsiEncoding::from_pairs({{3, 0}, {1, 1}})));
    CHECK_FALSE(fulfills_associativity(PsiEncoding::from_pairs({{1, 1}, {1, 0}})));
    // the two formulations agree on everything encodable
    for (int p = 0; p <= 3; ++p) {
        for (int m = 0; m <= 3; ++m) {
            if (p == 0 && m == 0) continue;
            const PsiEncoding e = PsiEncoding::from_pairs({{p, m}});
            CHECK(fulfills_associativity(e) == fulfills_associativity(decode(e)));
        }
    }
}

TEST_CASE("value of an associative encoding") {
    CHECK(value(PsiEncoding{}) == 0);
    CHECK(value(PsiEncoding::from_pairs({{1, 1}})) == 0);  // one cancelling pair
    CHECK(value(PsiEncoding::from_pairs({{3, 0}})) == 1);
    CHECK(value(PsiEncoding::from_pairs({{0, 2}})) == -1);
    CHECK(value(PsiEncoding::from_pairs({{1, 0}, {1, 1}})) == 2);
    CHECK(value(PsiEncoding::from_levels({Level{7, 0, 2}})) == -7);
    CHECK_THROWS_AS(value(PsiEncoding::from_pairs({{2, 1}})), NotAssociative);
    CHECK_THROWS_AS(value(PsiEncoding::from_pairs({{1, 1}, {1, 0}})), NotAssociative);
}

// ---------------------------------------------------------------------------
// text forms
// ---------------------------------------------------------------------------

TEST_CASE("parse_sequence accepts comma lists, blanks, and the empty word") {
    CHECK(parse_sequence("3,2,-1").values == std::vector<int>{3, 2, -1});
    CHECK(parse_sequence(" 3 , 2 ").values == std::vector<int>{3, 2});
    CHECK(parse_sequence("").empty());
    CHECK(parse_sequence("  ").empty());
    CHECK(parse_sequence("\xce\xb5").empty());
    CHECK(parse_sequence("3,0,2").values == std::vector<int>{3, 2});  // zero dropped
    CHECK(parse_sequence("+4").values == std::vector<int>{4});
    CHECK_THROWS_AS(parse_sequence("3,,2"), ParseError);
    CHECK_THROWS_AS(parse_sequence("abc"), ParseError);
    CHECK_THROWS_AS(parse_sequence("3;2"), ParseError);
}

TEST_CASE("sequence printing") {
    CHECK(to_string(SignedSequence::of({3, 2, -1})) == "3,2,-1");
    CHECK(to_string(SignedSequence{}) == "\xce\xb5");
}

TEST_CASE("encoding text: implicit pair form when magnitudes run q..1") {
    const PsiEncoding e = PsiEncoding::from_pairs({{2, 1}, {1, 2}, {4, 0}});
    CHECK(to_string(e) == "(2,1)(1,2)(4,0)");
    CHECK(parse_psi("(2,1)(1,2)(4,0)") == e);
    CHECK(parse_psi(" (2,1) (1,2) (4,0) ") == e);
    CHECK(to_string(PsiEncoding{}) == "\xce\xb5");
    CHECK(parse_psi("\xce\xb5").empty());
    CHECK(parse_psi("").empty());
}

TEST_CASE("encoding text: explicit form for sparse magnitudes") {
    const PsiEncoding e = PsiEncoding::from_levels({Level{3, 1, 2}, Level{1, 1, 0}});
    CHECK(to_string(e) == "3:(1,2);1:(1,0)");
    CHECK(parse_psi("3:(1,2);1:(1,0)") == e);
    CHECK(parse_psi("3:(1,2);1:(1,0);") == e);  // trailing separator tolerated
    // round trip on both shapes
    for (const auto& text : {"(1,1)", "(2,3)(0,1)", "9:(1,1);4:(0,2)"}) {
        CHECK(to_string(parse_psi(text)) == text);
    }
}

TEST_CASE("parse_psi rejects malformed text") {
    CHECK_THROWS_AS(parse_psi("(2,1"), ParseError);
    CHECK_THROWS_AS(parse_psi("(a,1)"), ParseError);
    CHECK_THROWS_AS(parse_psi("3:(1,2);9:(1,0)"), PreconditionFailed);  // increasing magnitude
    CHECK_THROWS_AS(parse_psi("(0,0)"), PreconditionFailed);
    CHECK_THROWS_AS(parse_psi("3:1,2"), ParseError);
}
