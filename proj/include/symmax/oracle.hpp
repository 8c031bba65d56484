#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "symmax/core.hpp"
#include "symmax/rule.hpp"

namespace symmax {

// -------- brute-force ground truth over parenthesizations --------

// Every value reachable by some ordering + bracketing of the elements of `s`
// under the binary operation, computed by dynamic programming over
// sub-multisets: A({x}) = {x}, A(M) = union over proper splits M = L + R of
// the pointwise images symmax(A(L), A(R)).  The empty sequence yields {0}.
// Throws TooLarge when the sub-multiset table would exceed 2^21 entries or
// the split enumeration 50 million pairs.
std::set<int> achievable_values(const SignedSequence& s);

// Same set by literal enumeration: all distinct permutations x all full
// bracketings, evaluated recursively.  Exponential; guarded at 8 elements.
// Exists purely to cross-check achievable_values on small inputs.
std::set<int> achievable_values_naive(const SignedSequence& s);

// -------- checking rules against the bracketing oracle --------

struct OracleReport {
    bool pass = true;
    std::set<int> achievable;
    // One entry per input rule: the rule's value on s.
    std::vector<int> rule_values;
    // Human-readable violations; empty iff pass.
    std::vector<std::string> failures;
};

// Checks, for one sequence s and a set of rules:
//   (a) every rule's evaluate(s) lands in achievable_values(s),
//   (b) achievable_values(s) is contained in {+-n_k} U {0} over the distinct
//       magnitudes n_k of s,
//   (c) every achievable nonzero value delta*n_k whose extraction
//       preconditions hold on encode(s) is reached by the constructed
//       extraction rule.
OracleReport check_rules_against_bracketings(const SignedSequence& s,
                                             const std::vector<RuleExpr>& rules);

// -------- bounded enumeration of encodings --------

// All valid encodings with q <= max_levels levels and every count <= max_count,
// levels over (p,m) in [0..max_count]^2 \ {(0,0)}.  When only_nonassociative
// is set, keeps exactly the rule-active ones (top level has both signs).
// Deterministic order: q ascending, then lexicographic by (p,m) per level.
// Throws TooLarge if the result would exceed 2,000,000 encodings.
std::vector<PsiEncoding> enumerate_sequences(int max_levels, int max_count,
                                             bool only_nonassociative);

// Streaming variant for big sweeps; calls f on a reused buffer in the same
// order (no materialization, no size guard).  f returns false to stop early.
void for_each_sequence(int max_levels, int max_count, bool only_nonassociative,
                       const std::function<bool(const PsiEncoding&)>& f);

// Number of encodings the enumeration would produce.
long long count_sequences(int max_levels, int max_count, bool only_nonassociative);

}  // namespace symmax
