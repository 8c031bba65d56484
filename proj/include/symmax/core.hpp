#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symmax {

// -------- errors --------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct NotAssociative : Error { using Error::Error; };
struct NotMadeAssociative : Error { using Error::Error; };
struct NotWellFormed : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct MismatchedBase : Error { using Error::Error; };
struct AbsorbingFactor : Error { using Error::Error; };
struct NoCommonUpperBoundInInterval : Error { using Error::Error; };
struct InfiniteSupport : Error { using Error::Error; };

// -------- the binary operation --------

// Symmetric maximum: picks the argument of strictly larger magnitude,
// 0 when the arguments cancel (b == -a), and 0 is neutral.
int symmax(int a, int b);

// -------- sequences --------

// A finite sequence over the nonzero integers.  Zeros are dropped on
// ingestion; order is preserved but irrelevant to every operation here.
struct SignedSequence {
    std::vector<int> values;

    static SignedSequence of(const std::vector<int>& raw);

    bool empty() const { return values.empty(); }
    std::size_t size() const { return values.size(); }
};

// -------- the (theta, psi) encoding --------

// One magnitude level: `pos` occurrences of +magnitude and `neg` of
// -magnitude.  A valid encoding has strictly decreasing magnitudes and
// no (0,0) level.
struct Level {
    int magnitude = 0;
    int pos = 0;
    int neg = 0;

    bool operator==(const Level&) const = default;
};

struct PsiEncoding {
    std::vector<Level> levels;

    // Pairs with implicit magnitudes q, q-1, ..., 1.
    static PsiEncoding from_pairs(const std::vector<std::pair<int, int>>& pairs);
    static PsiEncoding from_levels(std::vector<Level> levels);

    bool empty() const { return levels.empty(); }
    std::size_t size() const { return levels.size(); }
    int total_multiplicity() const;

    // True when the top level has both signs, i.e. some rule can still act.
    // The single-level (1,1) encoding counts as active here even though the
    // two-element sequence it encodes has a well-defined value (0).
    bool active() const {
        return !levels.empty() && levels.front().pos > 0 && levels.front().neg > 0;
    }

    bool operator==(const PsiEncoding&) const = default;
};

PsiEncoding encode(const SignedSequence& s);
SignedSequence decode(const PsiEncoding& e);

// Value-level associativity: |s| <= 2, or max(s) != -min(s).  Equivalently on
// the encoding: total multiplicity <= 2, or p1 == 0, or m1 == 0.
bool fulfills_associativity(const SignedSequence& s);
bool fulfills_associativity(const PsiEncoding& e);

// Value of an associative encoding: 0 for the empty one and for the single
// (1,1) level, otherwise +-n1 by the sign present at the top level.
// Throws NotAssociative otherwise.
int value(const PsiEncoding& e);

// -------- text forms --------

// "3,2,-1" (comma separated, blanks allowed); "" or unicode epsilon for the
// empty sequence.
SignedSequence parse_sequence(const std::string& text);
std::string to_string(const SignedSequence& s);

// "(p,m)(p,m)..." with implicit magnitudes q..1, or "n:(p,m);n:(p,m);..."
// with explicit ones.
PsiEncoding parse_psi(const std::string& text);
std::string to_string(const PsiEncoding& e);

}  // namespace symmax
