#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symmax/canonical.hpp"
#include "symmax/core.hpp"
#include "symmax/engine.hpp"
#include "symmax/rule.hpp"

namespace symmax {

// -------- the order on rules: R <= R' iff R deletes at least as much --------
// -------- from every nonassociative sequence                        --------

// Bounds for sweep-based searches: encodings with at most max_levels levels
// and per-sign counts at most max_count.
struct Budget {
    int max_levels = 6;
    int max_count = 3;

    bool operator==(const Budget&) const = default;
};

// True when p1 deletes at least as much as p2 at every level, both signs.
// Both profiles must be over the same original encoding (same magnitudes).
bool profile_dominates(const DeletionProfile& p1, const DeletionProfile& p2);

enum class Relation { Equal, Less, Greater, Incomparable, Undecided };

std::string to_string(Relation r);

// A certificate sequence with both rules' deletion profiles on it.
struct Witness {
    PsiEncoding sequence;
    DeletionProfile left;   // first rule's deletions
    DeletionProfile right;  // second rule's deletions
};

struct OrderVerdict {
    Relation relation = Relation::Undecided;
    // Which decision procedure produced the verdict, e.g.
    // "canonical-form-equality", "least-element", "label-partition",
    // "label-cancellation-split", "head-label-dominance",
    // "infinite-alternation-absorbs", "single-omega-factor-blocks",
    // "single-letter-omegas", "bounded-profile-search",
    // "bounded-kernel-search".
    std::string method;
    // For Incomparable: witnesses[0] has the first rule deleting strictly
    // more, witnesses[1] the second rule deleting strictly more.
    std::vector<Witness> witnesses;
    // Echoed for budget-limited verdicts.
    std::optional<Budget> budget;
    // For Undecided: which containment survived every enumerated sequence:
    // "<=" (first rule kept dominating), ">=", or "<=>" (profiles agreed
    // everywhere within budget).
    std::string surviving;
};

// Decides the order between two well-formed rules.  Pipeline: canonical
// equality; the least element; exact pointwise decision when both rules use
// no below-top letters; common-prefix peeling plus the structural fragment
// deciders (same-word label split, infinite alternation vs finite word,
// single-word factors over the least tail, single-letter words); finally a
// budget-bounded profile sweep.  Exact verdicts name their decider;
// sweep-based Incomparable verdicts are exact (two verified strict
// witnesses); everything else from the sweep is Undecided.
OrderVerdict compare(const RuleExpr& r1, const RuleExpr& r2, const Budget& budget = {});

// The budget-limited profile sweep alone (compare's final stage): scans every
// rule-active encoding within budget, tracking which containments get
// refuted.  Returns Incomparable (exact, with witnesses) or Undecided with
// the surviving direction(s).
OrderVerdict bounded_profile_search(const RuleExpr& r1, const RuleExpr& r2,
                                    const Budget& budget = {});

// Same relation decided through kernels (the sets of sequences a rule deletes
// entirely); the rule order and the kernel order coincide, so structural
// verdicts transfer, but Incomparable certificates are kernel witnesses:
// sequences one rule deletes entirely and the other does not.
OrderVerdict kernel_compare(const RuleExpr& r1, const RuleExpr& r2,
                            const Budget& budget = {});

// The budget-limited kernel sweep alone.
OrderVerdict bounded_kernel_search(const RuleExpr& r1, const RuleExpr& r2,
                                   const Budget& budget = {});

// -------- classification --------

enum class RuleClass { Least, Atom, Maximal, None };

std::string to_string(RuleClass c);

// Structural classification of a well-formed rule's canonical form:
//   Least   — the single factor [(r4 r5)*, 1, 1].
//   Atom    — minimal above the least element: a single factor
//             [(r4 r5)*, a, b] with (a,b) != (1,1); or the two-factor form
//             [omega r1 r2 r3][least factor] whose omega runs end with an
//             unbounded run followed by one bounded opposite-letter run.
//   Maximal — nothing strictly above: every factor has a single-letter
//             (possibly empty) omega word and label != (1,1).
//   None    — anything else.
RuleClass classify(const RuleExpr& r);

// -------- rules using only the top-level letters (label streams) --------

using Label = std::pair<int, int>;  // (r1 bit, r2 bit)

// An eventually periodic stream of factor labels; the canonical form of any
// rule whose factors all have empty omega words.  Kept normalized: primitive
// cycle, minimal prefix.
struct R123Labels {
    std::vector<Label> prefix;
    std::vector<Label> cycle;  // non-empty

    const Label& at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return cycle[(i - prefix.size()) % cycle.size()];
    }

    void normalize();

    bool operator==(const R123Labels&) const = default;
};

// Label stream of a canonical form, when the rule qualifies (periodic, all
// omega words empty); nullopt otherwise.
std::optional<R123Labels> to_labels(const CanonicalRule& c);

// The canonical form with the given labels and empty omega words.
CanonicalRule from_labels(const R123Labels& t);

// Exact pointwise order test for label streams: t1 <= t2 iff at every
// position the labels agree or t1's is (1,1).
bool labels_le(const R123Labels& t1, const R123Labels& t2);

// Greatest lower bound: pointwise, differing labels collapse to (1,1).
R123Labels meet123(const R123Labels& t1, const R123Labels& t2);

// Least upper bound inside a common interval: pointwise, (1,1) yields to the
// other label.  Throws NoCommonUpperBoundInInterval when two differing
// non-(1,1) labels meet at a position.
R123Labels join123(const R123Labels& t1, const R123Labels& t2);

// All rules in the interval from the all-(1,1) stream up to R: one per subset
// of R's non-(1,1) positions (kept or collapsed to (1,1)), in ascending
// bitmask order (bit i = keep the i-th non-(1,1) position).  Requires finite
// support: an all-(1,1) cycle (else InfiniteSupport); throws TooLarge beyond
// 20 support positions.
std::vector<R123Labels> interval123(const R123Labels& r);

// -------- witness gadget --------

// A sequence the factor consumes exactly: run(f, sigma) = empty and
// run(f, sigma . tail) = tail for any appended tail.  The top (1,1) pair
// feeds the factor's cancellation; each bounded run contributes that many
// single-signed levels, each unbounded run one level (the following run's
// opposite-signed level stalls it).  Throws AbsorbingFactor when f's omega
// word is absorbing (such factors consume every tail).
PsiEncoding witness_for_factor(const Factor& f);

}  // namespace symmax
