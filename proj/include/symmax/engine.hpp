#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symmax/core.hpp"
#include "symmax/rule.hpp"

namespace symmax {

// -------- rewriting --------

// One application of an elementary rule.  Each rule acts only when its
// condition holds and is the identity otherwise; every action removes at
// least one occurrence.  Levels emptied to (0,0) are dropped.
//   r1: top has both signs and pos > 1      -> top.pos = 1
//   r2: top has both signs and neg > 1      -> top.neg = 1
//   r3: top has both signs                  -> cancel min(pos, neg) pairs
//   r4: top has both signs and a second level with pos > 0 -> clear it
//   r5: top has both signs and a second level with neg > 0 -> clear it
PsiEncoding apply_elementary(RuleLetter rule, const PsiEncoding& e);

// A single-step deletion instruction.  kind 1 removes one +n1 (requires
// pos > 1 at the top, so a survivor remains), kind 2 one -n1 (neg > 1),
// kind 3 one cancelling pair at the top (both counts > 0), kind 4 one
// +n_position and kind 5 one -n_position at a level below the top
// (position >= 2, 1-based into the *current* encoding).  Unlike the lettered
// rules these carry no guard on the rest of the encoding; an unmet
// requirement throws PreconditionFailed.  Emptied levels are dropped.
struct BasicRule {
    int kind = 3;      // 1..5
    int position = 1;  // level index, 1-based; meaningful for kinds 4 and 5

    bool operator==(const BasicRule&) const = default;
};

PsiEncoding apply_basic(const BasicRule& rule, const PsiEncoding& e);

// A word over basic rules: concatenations and stars, run left to right.
// Inside a word an unmet requirement makes the step a no-op instead of an
// error, so running a word never throws.  A starred subword repeats until
// one full pass changes nothing; this terminates because every applied step
// strictly decreases the total multiplicity.
struct BasicWord {
    enum class Kind { Step, Concat, Star };

    Kind kind = Kind::Concat;
    BasicRule step;                   // valid when kind == Step
    std::vector<BasicWord> children;  // Concat: 0..n, Star: exactly 1

    bool operator==(const BasicWord&) const = default;
};

BasicWord basic_step(BasicRule b);
BasicWord basic_concat(std::vector<BasicWord> parts);  // unwraps a singleton
BasicWord basic_star(BasicWord body);

PsiEncoding run_basic_word(const BasicWord& word, const PsiEncoding& e);

// -------- running a rule word --------

// The multiset of elements a run deleted, as (magnitude, sign) counts taken
// against the starting encoding.  Two runs compare by containment.
struct DeletionProfile {
    // Parallel to the *starting* encoding's levels: how many +magnitude and
    // -magnitude occurrences disappeared at each of its levels.
    std::vector<Level> deleted;

    bool operator==(const DeletionProfile&) const = default;
};

// True when every deletion in `small` also occurs in `big` (pointwise <=,
// per magnitude and sign).  Both profiles must describe the same start.
bool profile_contains(const DeletionProfile& big, const DeletionProfile& small);

struct TraceStep {
    std::string action;  // e.g. "r3"
    PsiEncoding before;
    PsiEncoding after;
};

struct RunResult {
    PsiEncoding residue;
    DeletionProfile profile;
    std::vector<TraceStep> trace;  // filled only when requested
};

// Run a rule word on an encoding.  A starred subword repeats until a whole
// pass makes no change.  Always terminates: every action strictly decreases
// the total multiplicity.
RunResult run(const RuleExpr& rule, const PsiEncoding& start, bool want_trace = false);

// Evaluate a sequence under a rule.  The residue must be value-defined
// (empty, single-signed top, or one cancelling pair); otherwise the rule did
// not make this sequence associative and NotMadeAssociative is thrown.
int evaluate(const RuleExpr& rule, const SignedSequence& s, std::vector<TraceStep>* trace = nullptr);

// -------- compiled form (fast path for sweeps) --------

// Flat program over the elementary rules: Letter ops and star frames.
class CompiledRule {
  public:
    explicit CompiledRule(const RuleExpr& rule);

    // Deletion profile of running on `start`, written into `out` (resized &
    // zeroed here).  Scratch buffers are reused across calls.
    void run_profile(const PsiEncoding& start, std::vector<Level>& out) const;

    // Residue only (same machinery, no profile bookkeeping).
    PsiEncoding run_residue(const PsiEncoding& start) const;

  private:
    struct Op {
        int code;  // 1..5 apply letter; 0 star-begin; -1 star-end (arg = begin index)
        int arg;
    };
    std::vector<Op> ops_;
    mutable std::vector<long long> marks_;  // per star-begin: action count at pass start
    mutable std::vector<Level> scratch_;    // working encoding

    void exec() const;  // runs ops_ over scratch_
};

// -------- targeted extraction --------

// Build a rule word that reduces any active encoding sharing e's shape to the
// single element delta * n_k: walk levels 2..k-1 clearing whichever side(s)
// remain, clear the unwanted sign at level k, then trim the top and cancel.
// Preconditions: e is active (top has both signs), 1 <= k <= q, and level k
// has an element of sign delta (delta = +1 or -1).  For k == 1 the requested
// side must have count > 1 so that one survivor outlives the cancellation.
RuleExpr make_extraction_rule(const PsiEncoding& e, int k, int delta);

}  // namespace symmax
