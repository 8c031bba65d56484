#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "symmax/core.hpp"
#include "symmax/rule.hpp"

namespace symmax {

// -------- canonical (factorized, irredundant) form of a rule word --------

// Count value standing for an unbounded (starred) run.
inline constexpr long long kInfinity = std::numeric_limits<long long>::max();

// One maximal run of a single deletion letter inside an omega word.
struct Run {
    int letter = 4;           // 4 or 5
    long long count = 1;      // >= 1, or kInfinity
    bool operator==(const Run&) const = default;
};

// A word over the two below-top deletion letters, up to equivalence: either
// the infinitely-alternating word (which consumes everything below the top
// level) or a finite list of runs with alternating letters.  An empty run
// list is the empty word.
struct OmegaWord {
    bool infinite_alternation = false;
    std::vector<Run> runs;  // meaningful iff !infinite_alternation

    // Absorbing omega words deactivate the top level for good once their
    // factor's cancellation fires; everything after them is dead code.
    bool absorbing() const {
        return infinite_alternation || (!runs.empty() && runs.back().count == kInfinity);
    }
    bool empty() const { return !infinite_alternation && runs.empty(); }

    bool operator==(const OmegaWord&) const = default;
};

// One factor: omega word, then the two top-trim bits (r1 presence, r2
// presence), then the mandatory cancellation r3.
struct Factor {
    OmegaWord omega;
    int a = 0;  // r1 bit
    int b = 0;  // r2 bit

    bool operator==(const Factor&) const = default;
};

// The canonical form: a finite factor list (last factor absorbing, nothing
// else absorbing), or an eventually-periodic stream (no absorbing factor
// anywhere, primitive cycle, minimal prefix).
struct CanonicalRule {
    std::vector<Factor> prefix;
    bool finite = true;
    std::vector<Factor> cycle;  // non-empty iff !finite

    // Unrolled stream access; for finite forms i must be < prefix.size().
    const Factor& at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return cycle[(i - prefix.size()) % cycle.size()];
    }
    // Number of factors before the stream cycles (or ends).
    std::size_t prefix_size() const { return prefix.size(); }

    bool operator==(const CanonicalRule&) const = default;
};

// -------- operations --------

// Factorizes a rule word into its canonical form: splits on the cancellation
// letter, collects below-top letters into omega words (starred letter-only
// groups become unbounded runs or the alternating word), truncates at the
// first absorbing factor, and normalizes periodic tails (primitive cycle,
// minimal prefix).  Throws NotWellFormed when the word is not a
// well-formed computation rule.
CanonicalRule factorize(const RuleExpr& r);

// True iff the factor stream is infinite (a star containing the cancellation
// letter closes it) or some emitted factor's omega word is absorbing.
// Structural; never throws.
bool well_formed(const RuleExpr& r);

// True iff both rules' canonical forms are identical.  Throws NotWellFormed
// if either rule is not well formed.
bool equivalent(const RuleExpr& r1, const RuleExpr& r2);

// Deterministic surface form that reparses to an equivalent rule:
// runs as repeated letters, unbounded runs as "r4*"/"r5*", the alternating
// word as "(r4 r5)*", and a periodic tail as "( ... )*".
std::string canonical_print(const CanonicalRule& c);
std::string canonical_print(const Factor& f);

// The canonical form as a plain rule expression (reparse of canonical_print).
RuleExpr to_rule_expr(const CanonicalRule& c);

}  // namespace symmax
