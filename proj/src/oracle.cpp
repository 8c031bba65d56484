#include "symmax/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "symmax/engine.hpp"

namespace symmax {

namespace {

// A multiset of nonzero integers as sorted (value, count) pairs.
using Multiset = std::vector<std::pair<int, int>>;

Multiset multiset_of(const SignedSequence& s) {
    std::map<int, int> counts;
    for (int v : s.values) counts[v]++;
    return Multiset(counts.begin(), counts.end());
}

// Mixed-radix index over sub-multisets: digit i ranges over 0..count_i.
long long submultiset_count(const Multiset& m) {
    long long n = 1;
    for (auto& [v, c] : m) n *= c + 1;
    return n;
}

}  // namespace

std::set<int> achievable_values(const SignedSequence& s) {
    if (s.empty()) return {0};
    Multiset base = multiset_of(s);
    double work = 1.0;
    for (auto& [v, c] : base)
        work *= static_cast<double>(c + 1) * (c + 2) / 2.0;  // (left, whole) digit pairs
    const long long n = submultiset_count(base);
    if (n > (1LL << 21) || work > 5e7)
        throw TooLarge("achievable_values: input too large for the sub-multiset table");
    // sets[idx] = achievable values of the sub-multiset encoded by idx.
    std::vector<std::set<int>> sets(static_cast<std::size_t>(n));

    const int k = static_cast<int>(base.size());
    std::vector<int> radix(k);
    for (int i = 0; i < k; ++i) radix[i] = base[i].second + 1;

    std::vector<int> digits(k, 0);
    // Iterate indices in increasing order; every proper sub-multiset of idx
    // has a smaller index, so a single ascending pass suffices.
    for (long long idx = 1; idx < n; ++idx) {
        // Advance the digit odometer to represent idx.
        for (int i = 0; i < k; ++i) {
            if (++digits[i] < radix[i]) break;
            digits[i] = 0;
        }
        int size = std::accumulate(digits.begin(), digits.end(), 0);
        if (size == 1) {
            for (int i = 0; i < k; ++i)
                if (digits[i] == 1) sets[static_cast<std::size_t>(idx)].insert(base[i].first);
            continue;
        }
        // Enumerate proper splits idx = left + right (left < right to halve
        // the work; the operation is commutative).
        std::vector<int> left(k, 0);
        auto& out = sets[static_cast<std::size_t>(idx)];
        while (true) {
            // Next sub-digit vector of `digits`, odometer with per-digit cap.
            int i = 0;
            for (; i < k; ++i) {
                if (left[i] < digits[i]) {
                    ++left[i];
                    std::fill(left.begin(), left.begin() + i, 0);
                    break;
                }
            }
            if (i == k) break;
            long long li = 0, ri = 0;
            for (int j = k - 1; j >= 0; --j) {
                li = li * radix[j] + left[j];
                ri = ri * radix[j] + (digits[j] - left[j]);
            }
            if (li == 0 || ri == 0 || li > ri) continue;
            for (int a : sets[static_cast<std::size_t>(li)])
                for (int b : sets[static_cast<std::size_t>(ri)]) out.insert(symmax(a, b));
        }
    }
    return sets[static_cast<std::size_t>(n - 1)];
}

namespace {

// All values of full bracketings of the exact ordered slice [lo, hi).
std::set<int> bracket_values(const std::vector<int>& seq, int lo, int hi,
                             std::map<std::pair<int, int>, std::set<int>>& memo) {
    if (hi - lo == 1) return {seq[static_cast<std::size_t>(lo)]};
    auto it = memo.find({lo, hi});
    if (it != memo.end()) return it->second;
    std::set<int> out;
    for (int mid = lo + 1; mid < hi; ++mid) {
        auto ls = bracket_values(seq, lo, mid, memo);
        auto rs = bracket_values(seq, mid, hi, memo);
        for (int a : ls)
            for (int b : rs) out.insert(symmax(a, b));
    }
    memo[{lo, hi}] = out;
    return out;
}

}  // namespace

std::set<int> achievable_values_naive(const SignedSequence& s) {
    if (s.empty()) return {0};
    if (s.size() > 8) throw TooLarge("achievable_values_naive: more than 8 elements");
    std::vector<int> seq = s.values;
    std::sort(seq.begin(), seq.end());
    std::set<int> out;
    do {
        std::map<std::pair<int, int>, std::set<int>> memo;
        auto vals = bracket_values(seq, 0, static_cast<int>(seq.size()), memo);
        out.insert(vals.begin(), vals.end());
    } while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

OracleReport check_rules_against_bracketings(const SignedSequence& s,
                                             const std::vector<RuleExpr>& rules) {
    OracleReport report;
    report.achievable = achievable_values(s);
    const PsiEncoding e = encode(s);

    // (a) every rule's value is some bracketing's value.
    for (const auto& r : rules) {
        int v = evaluate(r, s);
        report.rule_values.push_back(v);
        if (!report.achievable.count(v)) {
            report.pass = false;
            report.failures.push_back("rule " + print_rule(r) + " evaluates to " +
                                      std::to_string(v) + ", not achievable by any bracketing");
        }
    }

    // (b) achievable values are magnitudes of s (either sign) or 0.
    std::set<int> allowed = {0};
    for (const auto& lv : e.levels) {
        allowed.insert(lv.magnitude);
        allowed.insert(-lv.magnitude);
    }
    for (int v : report.achievable) {
        if (!allowed.count(v)) {
            report.pass = false;
            report.failures.push_back("achievable value " + std::to_string(v) +
                                      " is not +-n_k or 0");
        }
    }

    // (c) every achievable signed magnitude with valid extraction
    //     preconditions is reached by the constructed extraction rule.
    for (std::size_t i = 0; i < e.levels.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        const Level& lv = e.levels[i];
        for (int delta : {+1, -1}) {
            int target = delta * lv.magnitude;
            if (!report.achievable.count(target)) continue;
            // Preconditions of make_extraction_rule.
            if (!e.active()) continue;
            int wanted = delta > 0 ? lv.pos : lv.neg;
            if (k == 1 ? wanted <= 1 : wanted <= 0) continue;
            RuleExpr ext = make_extraction_rule(e, k, delta);
            int got = evaluate(ext, s);
            if (got != target) {
                report.pass = false;
                report.failures.push_back(
                    "extraction rule for level " + std::to_string(k) + ", sign " +
                    (delta > 0 ? std::string("+") : std::string("-")) + " gives " +
                    std::to_string(got) + ", expected " + std::to_string(target));
            }
        }
    }
    return report;
}

namespace {

// Shared odometer behind the enumeration API.  Levels hold pair index
// 0..(cells-1) mapping to (p,m) in lexicographic order, skipping (0,0).
void enumerate_impl(int max_levels, int max_count, bool only_nonassociative,
                    const std::function<bool(const PsiEncoding&)>& f) {
    if (max_levels < 0 || max_count < 0)
        throw PreconditionFailed("enumerate_sequences: negative bound");
    const int cells = (max_count + 1) * (max_count + 1) - 1;  // pairs minus (0,0)
    PsiEncoding buf;
    auto pair_of = [&](int code) {
        // code 0 -> (0,1), ..., skipping (0,0) which would be code -1.
        int p = (code + 1) / (max_count + 1);
        int m = (code + 1) % (max_count + 1);
        return std::pair<int, int>(p, m);
    };
    for (int q = 1; q <= max_levels; ++q) {
        if (cells == 0) break;
        std::vector<int> digits(static_cast<std::size_t>(q), 0);
        buf.levels.assign(static_cast<std::size_t>(q), Level{});
        for (int i = 0; i < q; ++i) buf.levels[static_cast<std::size_t>(i)].magnitude = q - i;
        while (true) {
            bool keep = true;
            if (only_nonassociative) {
                auto [p, m] = pair_of(digits[0]);
                keep = p > 0 && m > 0;
            }
            if (keep) {
                for (int i = 0; i < q; ++i) {
                    auto [p, m] = pair_of(digits[static_cast<std::size_t>(i)]);
                    buf.levels[static_cast<std::size_t>(i)].pos = p;
                    buf.levels[static_cast<std::size_t>(i)].neg = m;
                }
                if (!f(buf)) return;
            }
            // Advance, most significant digit first so the order is
            // lexicographic over (level1, level2, ...).
            int i = q - 1;
            for (; i >= 0; --i) {
                if (++digits[static_cast<std::size_t>(i)] < cells) break;
                digits[static_cast<std::size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
    }
}

}  // namespace

long long count_sequences(int max_levels, int max_count, bool only_nonassociative) {
    const long long cells = static_cast<long long>(max_count + 1) * (max_count + 1) - 1;
    const long long active_tops = static_cast<long long>(max_count) * max_count;
    long long total = 0, layer = 1;
    for (int q = 1; q <= max_levels; ++q) {
        // layer = cells^(q-1)
        total += (only_nonassociative ? active_tops : cells) * layer;
        if (layer > (1LL << 62) / std::max<long long>(cells, 1)) throw TooLarge("count_sequences");
        layer *= cells;
    }
    return total;
}

std::vector<PsiEncoding> enumerate_sequences(int max_levels, int max_count,
                                             bool only_nonassociative) {
    if (count_sequences(max_levels, max_count, only_nonassociative) > 2'000'000)
        throw TooLarge("enumerate_sequences: more than 2,000,000 encodings; narrow the bounds");
    std::vector<PsiEncoding> out;
    enumerate_impl(max_levels, max_count, only_nonassociative, [&](const PsiEncoding& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

void for_each_sequence(int max_levels, int max_count, bool only_nonassociative,
                       const std::function<bool(const PsiEncoding&)>& f) {
    enumerate_impl(max_levels, max_count, only_nonassociative, f);
}

}  // namespace symmax
