#include "symmax/order.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <thread>

#include "symmax/oracle.hpp"

namespace symmax {

namespace {

Label label_of(const Factor& f) { return {f.a, f.b}; }

bool is_bottom(const Label& l) { return l.first == 1 && l.second == 1; }

const Factor& least_factor() {
    static const Factor f{OmegaWord{true, {}}, 1, 1};
    return f;
}

const CanonicalRule& least_canonical() {
    static const CanonicalRule c{{least_factor()}, true, {}};
    return c;
}

std::size_t lcm_sz(std::size_t a, std::size_t b) { return std::lcm(a, b); }

// ---------------- candidate sequences as (pos, neg) pair lists ----------------

using Pairs = std::vector<std::pair<int, int>>;

// The single level on which `winner` deletes strictly more than `loser`.
// Defined whenever loser != winner and loser != (1,1).
Pairs dominance_pair(const Label& winner, const Label& loser) {
    if (is_bottom(winner)) {
        if (loser == Label{1, 0}) return {{1, 2}};
        return {{2, 1}};
    }
    if (winner == Label{1, 0}) return {{2, 1}};
    if (winner == Label{0, 1}) return {{1, 2}};
    return {{2, 2}};  // winner == (0,0)
}

// Levels a non-absorbing factor consumes exactly: the top pair feeds its
// cancellation, each bounded run that many single-signed levels, each
// unbounded run a single level (the following run's level stalls it).
Pairs gadget_pairs(const Factor& f) {
    Pairs p{{1, 1}};
    for (const Run& r : f.omega.runs) {
        long long c = (r.count == kInfinity) ? 1 : r.count;
        for (long long k = 0; k < c; ++k)
            p.emplace_back(r.letter == 4 ? std::make_pair(1, 0) : std::make_pair(0, 1));
    }
    return p;
}

void prepend_pairs(Pairs& dst, const Pairs& front) {
    dst.insert(dst.begin(), front.begin(), front.end());
}

PsiEncoding encoding_of(const Pairs& p) { return PsiEncoding::from_pairs(p); }

// ---------------- stream views ----------------

struct View {
    const CanonicalRule* c;
    std::size_t off = 0;

    bool has(std::size_t i) const { return !c->finite || off + i < c->prefix.size(); }
    const Factor& at(std::size_t i) const { return c->at(off + i); }
    bool finite() const { return c->finite; }
    std::size_t remaining_prefix() const {
        return off >= c->prefix.size() ? 0 : c->prefix.size() - off;
    }
    std::size_t cycle_len() const { return c->finite ? 1 : c->cycle.size(); }
    View next() const { return View{c, off + 1}; }
};

// ---------------- single-word factors over the least tail ----------------

struct Block {
    long long a4 = 0;  // leading r4-run length (kInfinity allowed)
    long long b5 = 0;  // trailing r5-run length

    bool operator==(const Block&) const = default;
};

std::vector<Block> blocks_of(const OmegaWord& w) {
    std::vector<Block> out;
    std::size_t i = 0;
    while (i < w.runs.size()) {
        Block b;
        if (w.runs[i].letter == 4) {
            b.a4 = w.runs[i].count;
            ++i;
        }
        if (i < w.runs.size() && w.runs[i].letter == 5) {
            b.b5 = w.runs[i].count;
            ++i;
        }
        out.push_back(b);
    }
    return out;
}

// Order between two rules of the shape [word . a b r3][least factor] with the
// same label bits, decided from the words' run blocks.  Differing block
// counts, differing final blocks, or differences too early always mean
// incomparable; the two comparable families are: equal streams except a
// larger final r4-run (deeper clearing reaches less often -> lower), and
// equal streams except a larger next-to-last r5-run when the final block has
// no r5-run.
std::optional<Relation> blocks_relation(const OmegaWord& w1, const OmegaWord& w2) {
    std::vector<Block> b1 = blocks_of(w1), b2 = blocks_of(w2);
    const std::size_t n = b1.size();
    if (n != b2.size()) return Relation::Incomparable;
    if (n == 0) return std::nullopt;  // equal words; unreachable for differing factors
    const std::size_t L = n - 1;
    if (b1[L].b5 != b2[L].b5) return Relation::Incomparable;
    if (b1[L].b5 == 0) {
        if (b1[L].a4 != b2[L].a4) return Relation::Incomparable;
        if (n == 1) return std::nullopt;  // fully equal; unreachable
        if (b1[L - 1].a4 != b2[L - 1].a4) return Relation::Incomparable;
        for (std::size_t j = 0; j + 1 < L; ++j)
            if (b1[j] != b2[j]) return Relation::Incomparable;
        if (b1[L - 1].b5 != b2[L - 1].b5)
            return b1[L - 1].b5 > b2[L - 1].b5 ? Relation::Less : Relation::Greater;
        return std::nullopt;  // fully equal; unreachable
    }
    for (std::size_t j = 0; j < L; ++j)
        if (b1[j] != b2[j]) return Relation::Incomparable;
    if (b1[L].a4 != b2[L].a4)
        return b1[L].a4 > b2[L].a4 ? Relation::Less : Relation::Greater;
    return std::nullopt;  // fully equal; unreachable
}

// Candidate separating sequences for the block decider: block-shaped strings
// built from both words' exponents (unbounded runs replaced by a finite stand-
// in just beyond every bounded exponent in sight).
std::vector<Pairs> block_candidates(const OmegaWord& w1, const OmegaWord& w2) {
    long long sub = 2;
    for (const OmegaWord* w : {&w1, &w2})
        for (const Run& r : w->runs)
            if (r.count != kInfinity) sub = std::max(sub, r.count + 2);
    std::vector<Pairs> out;
    for (const OmegaWord* w : {&w1, &w2}) {
        std::vector<Block> blocks = blocks_of(*w);
        for (int da = 0; da <= 1; ++da)
            for (int db = 0; db <= 1; ++db)
                for (int trail = 0; trail <= 1; ++trail) {
                    Pairs p{{1, 1}};
                    for (const Block& b : blocks) {
                        long long a = (b.a4 == kInfinity ? sub : b.a4) + (b.a4 ? da : 0);
                        long long bb = (b.b5 == kInfinity ? sub : b.b5) + (b.b5 ? db : 0);
                        for (long long k = 0; k < a; ++k) p.emplace_back(1, 0);
                        for (long long k = 0; k < bb; ++k) p.emplace_back(0, 1);
                    }
                    if (trail) p.emplace_back(1, 1);
                    out.push_back(std::move(p));
                }
        out.push_back(gadget_pairs(Factor{*w, 0, 0}));
    }
    return out;
}

// ---------------- single-letter-word streams ----------------

bool single_letter_view(const View& v) {
    std::size_t window = v.remaining_prefix() + (v.finite() ? 0 : v.cycle_len());
    for (std::size_t i = 0; i < window; ++i) {
        const OmegaWord& w = v.at(i).omega;
        if (w.infinite_alternation || w.runs.size() > 1) return false;
    }
    return true;
}

bool labels_match_common(const View& v1, const View& v2) {
    std::size_t bound;
    if (v1.finite() && v2.finite())
        bound = std::min(v1.remaining_prefix(), v2.remaining_prefix());
    else if (v1.finite())
        bound = v1.remaining_prefix();
    else if (v2.finite())
        bound = v2.remaining_prefix();
    else
        bound = std::max(v1.remaining_prefix(), v2.remaining_prefix()) +
                lcm_sz(v1.cycle_len(), v2.cycle_len());
    for (std::size_t i = 0; i < bound; ++i)
        if (label_of(v1.at(i)) != label_of(v2.at(i))) return false;
    return true;
}

// Consumption gadgets for the leading factors of both streams (cut before any
// absorbing factor), each with and without a trailing pair level.
std::vector<Pairs> prefix_gadget_candidates(const View& v1, const View& v2) {
    std::vector<Pairs> out;
    for (const View* v : {&v1, &v2}) {
        Pairs acc;
        for (std::size_t i = 0; i < 8 && v->has(i); ++i) {
            if (v->at(i).omega.absorbing()) break;
            Pairs g = gadget_pairs(v->at(i));
            acc.insert(acc.end(), g.begin(), g.end());
            out.push_back(acc);
            Pairs with_tail = acc;
            with_tail.emplace_back(1, 1);
            out.push_back(std::move(with_tail));
        }
    }
    return out;
}

// ---------------- structural stream comparison ----------------

struct Structural {
    Relation rel = Relation::Undecided;
    std::string method;
    std::vector<Pairs> pool;  // candidate separating sequences (Incomparable only)
};

constexpr int kMaxDepth = 8;

std::optional<Structural> compare_views(View v1, View v2, int depth) {
    if (depth > kMaxDepth) return std::nullopt;
    const std::size_t window = v1.remaining_prefix() + v2.remaining_prefix() +
                               lcm_sz(v1.cycle_len(), v2.cycle_len()) + 2;
    Pairs gadget;  // consumes every factor peeled so far, on both sides
    for (std::size_t step = 0; step <= window; ++step) {
        const bool h1 = v1.has(0), h2 = v2.has(0);
        if (!h1 && !h2) return Structural{Relation::Equal, "head-label-dominance", {}};
        if (!h1 || !h2) return std::nullopt;  // unreachable for canonical forms
        const Factor& f1 = v1.at(0);
        const Factor& f2 = v2.at(0);
        if (f1 == f2) {
            if (f1.omega.absorbing())
                return Structural{Relation::Equal, "head-label-dominance", {}};
            Pairs g = gadget_pairs(f1);
            gadget.insert(gadget.end(), g.begin(), g.end());
            v1 = v1.next();
            v2 = v2.next();
            continue;
        }
        const Label x = label_of(f1), y = label_of(f2);
        if (f1.omega == f2.omega) {
            // Same deletion word, different label bits.
            if (!is_bottom(x) && !is_bottom(y)) {
                Structural s{Relation::Incomparable, "label-cancellation-split", {}};
                Pairs c1 = dominance_pair(x, y), c2 = dominance_pair(y, x);
                prepend_pairs(c1, gadget);
                prepend_pairs(c2, gadget);
                s.pool = {std::move(c1), std::move(c2)};
                return s;
            }
            // One side trims both signs: it deletes at least as much at this
            // factor; the tails settle the rest.
            const bool first_bottom = is_bottom(x);
            auto sub = compare_views(v1.next(), v2.next(), depth + 1);
            if (!sub) return std::nullopt;
            const Relation tail = first_bottom
                                      ? sub->rel
                                      : (sub->rel == Relation::Less    ? Relation::Greater
                                         : sub->rel == Relation::Greater ? Relation::Less
                                                                         : sub->rel);
            // Viewed from the bottom-labelled side: Equal/Less tails keep it
            // strictly below; anything else splits the pair.
            if (tail == Relation::Equal || tail == Relation::Less)
                return Structural{first_bottom ? Relation::Less : Relation::Greater,
                                  "head-label-dominance",
                                  {}};
            Structural s{Relation::Incomparable, "head-label-dominance", {}};
            // The bottom label wins outright on the head pair...
            Pairs head = first_bottom ? dominance_pair(x, y) : dominance_pair(y, x);
            prepend_pairs(head, gadget);
            s.pool.push_back(std::move(head));
            // ...and the other side's edge comes from the tails.
            Pairs wrap = gadget;
            Pairs hg = gadget_pairs(f1);  // same word on both sides
            wrap.insert(wrap.end(), hg.begin(), hg.end());
            for (Pairs cand : sub->pool) {
                prepend_pairs(cand, wrap);
                s.pool.push_back(std::move(cand));
            }
            return s;
        }
        if (x == y) {
            // Same label bits, different deletion words.
            if (f1.omega.infinite_alternation != f2.omega.infinite_alternation) {
                const bool first_alt = f1.omega.infinite_alternation;
                return Structural{first_alt ? Relation::Less : Relation::Greater,
                                  "infinite-alternation-absorbs",
                                  {}};
            }
            const bool tail1 = v1.finite() && v1.remaining_prefix() == 2 &&
                               v1.at(1) == least_factor();
            const bool tail2 = v2.finite() && v2.remaining_prefix() == 2 &&
                               v2.at(1) == least_factor();
            if (tail1 && tail2 && !f1.omega.infinite_alternation) {
                auto rel = blocks_relation(f1.omega, f2.omega);
                if (rel) {
                    Structural s{*rel, "single-omega-factor-blocks", {}};
                    if (*rel == Relation::Incomparable) {
                        s.pool = block_candidates(f1.omega, f2.omega);
                        for (Pairs& cand : s.pool) prepend_pairs(cand, gadget);
                    }
                    return s;
                }
            }
            if (single_letter_view(v1) && single_letter_view(v2) &&
                labels_match_common(v1, v2)) {
                Structural s{Relation::Incomparable, "single-letter-omegas", {}};
                s.pool = prefix_gadget_candidates(v1, v2);
                for (Pairs& cand : s.pool) prepend_pairs(cand, gadget);
                return s;
            }
            return std::nullopt;
        }
        return std::nullopt;  // word and label both differ: no stream decider
    }
    // Both streams periodic and equal across a full alignment window.
    return Structural{Relation::Equal, "head-label-dominance", {}};
}

// ---------------- label streams (rules without below-top letters) ----------------

std::vector<Pairs> label_partition_pool(const R123Labels& t1, const R123Labels& t2) {
    const std::size_t window =
        std::max(t1.prefix.size(), t2.prefix.size()) + lcm_sz(t1.cycle.size(), t2.cycle.size());
    std::vector<Pairs> pool;
    auto add = [&](const R123Labels& win, const R123Labels& lose) {
        for (std::size_t i = 0; i < window; ++i) {
            const Label w = win.at(i), l = lose.at(i);
            if (l != w && !is_bottom(l)) {
                Pairs p(i, std::make_pair(1, 1));
                Pairs d = dominance_pair(w, l);
                p.insert(p.end(), d.begin(), d.end());
                pool.push_back(std::move(p));
                return;
            }
        }
    };
    add(t1, t2);  // where the first rule deletes strictly more
    add(t2, t1);
    return pool;
}

// ---------------- witness search ----------------

struct ProfilePair {
    std::vector<Level> p1, p2;
    bool ge1 = true, ge2 = true;  // p1 >= p2 / p2 >= p1 pointwise
};

void run_pair(const CompiledRule& cr1, const CompiledRule& cr2, const PsiEncoding& s,
              ProfilePair& out) {
    cr1.run_profile(s, out.p1);
    cr2.run_profile(s, out.p2);
    out.ge1 = out.ge2 = true;
    for (std::size_t i = 0; i < out.p1.size(); ++i) {
        if (out.p1[i].pos < out.p2[i].pos || out.p1[i].neg < out.p2[i].neg) out.ge1 = false;
        if (out.p2[i].pos < out.p1[i].pos || out.p2[i].neg < out.p1[i].neg) out.ge2 = false;
    }
}

Witness make_witness(const PsiEncoding& s, const ProfilePair& pp) {
    return Witness{s, DeletionProfile{pp.p1}, DeletionProfile{pp.p2}};
}

// Deterministic generic pattern enumeration: all strings over the pair,
// positive and negative unit levels, each base string also tried with one
// position upgraded to a separating level.
template <typename Fn>
void for_each_pattern(int qmax, Fn&& fn) {
    static const std::pair<int, int> base[3] = {{1, 1}, {1, 0}, {0, 1}};
    static const std::pair<int, int> special[3] = {{2, 1}, {1, 2}, {2, 2}};
    Pairs p;
    for (int q = 1; q <= qmax; ++q) {
        std::vector<int> d(q, 0);
        for (;;) {
            p.clear();
            for (int i = 0; i < q; ++i) p.push_back(base[d[i]]);
            if (p[0].first > 0 && p[0].second > 0)
                if (!fn(p)) return;
            for (int pos = 0; pos < q; ++pos) {
                const std::pair<int, int> keep = p[pos];
                for (const auto& s : special) {
                    p[pos] = s;
                    if (p[0].first > 0 && p[0].second > 0)
                        if (!fn(p)) return;
                }
                p[pos] = keep;
            }
            int i = q - 1;
            while (i >= 0 && d[i] == 2) d[i--] = 0;
            if (i < 0) break;
            ++d[i];
        }
    }
}

// Remove from s the occurrences the rule leaves behind; the shrunken sequence
// is a candidate the rule deletes entirely.
std::optional<PsiEncoding> minus_residue(const PsiEncoding& s, const CompiledRule& cr) {
    PsiEncoding res = cr.run_residue(s);
    if (res.levels.empty()) return s;
    PsiEncoding out;
    std::size_t ri = 0;
    bool changed = false;
    for (const Level& lv : s.levels) {
        Level keep = lv;
        if (ri < res.levels.size() && res.levels[ri].magnitude == lv.magnitude) {
            keep.pos -= res.levels[ri].pos;
            keep.neg -= res.levels[ri].neg;
            ++ri;
            changed = true;
        }
        if (keep.pos > 0 || keep.neg > 0) out.levels.push_back(keep);
    }
    if (!changed || out.levels.empty()) return std::nullopt;
    return out;
}

// ---------------- budget-bounded sweeps ----------------

struct SweepHit {
    std::uint64_t rank = 0;
    PsiEncoding seq;
};

struct SweepAcc {
    bool viol_le = false, viol_ge = false;  // refutations of r1<=r2 / r2<=r1
    std::optional<SweepHit> strict1, strict2;  // first rule / second rule strictly ahead
    std::optional<SweepHit> viol1, viol2;      // first refutation of either kind
};

void merge_hit(std::optional<SweepHit>& dst, const std::optional<SweepHit>& src) {
    if (src && (!dst || src->rank < dst->rank)) dst = src;
}

void merge_acc(SweepAcc& dst, const SweepAcc& src) {
    dst.viol_le |= src.viol_le;
    dst.viol_ge |= src.viol_ge;
    merge_hit(dst.strict1, src.strict1);
    merge_hit(dst.strict2, src.strict2);
    merge_hit(dst.viol1, src.viol1);
    merge_hit(dst.viol2, src.viol2);
}

// Walks every rule-active encoding within budget, stratified by (level count,
// top-level pair) so threads can split the work with a deterministic merge.
// `kernel` switches the per-sequence test from profile containment to
// kernel membership (deleted entirely by one rule, not the other).
SweepAcc sweep(const RuleExpr& r1, const RuleExpr& r2, const Budget& budget, bool kernel,
               bool abort_when_settled) {
    const int Q = std::max(1, budget.max_levels), B = std::max(1, budget.max_count);
    const int cells = (B + 1) * (B + 1) - 1;
    struct Stratum {
        int q, top;
    };
    std::vector<Stratum> strata;
    for (int q = 1; q <= Q; ++q)
        for (int code = 0; code < cells; ++code) {
            const int p = (code + 1) / (B + 1), m = (code + 1) % (B + 1);
            if (p > 0 && m > 0) strata.push_back({q, code});
        }
    const long long total = count_sequences(Q, B, true);
    unsigned nt = std::thread::hardware_concurrency();
    if (nt == 0) nt = 1;
    nt = std::min<unsigned>(nt, 8);
    if (total < 60000) nt = 1;
    std::vector<SweepAcc> accs(nt);

    auto worker = [&](unsigned tid) {
        CompiledRule cr1(r1), cr2(r2);
        SweepAcc& acc = accs[tid];
        PsiEncoding sigma;
        ProfilePair pp;
        PsiEncoding res1, res2;
        for (std::size_t s = tid; s < strata.size(); s += nt) {
            const int q = strata[s].q;
            sigma.levels.assign(q, Level{});
            for (int i = 0; i < q; ++i) sigma.levels[i].magnitude = q - i;
            std::vector<int> d(q, 0);
            d[0] = strata[s].top;
            std::uint64_t inner = 0;
            for (;;) {
                for (int i = 0; i < q; ++i) {
                    sigma.levels[i].pos = (d[i] + 1) / (B + 1);
                    sigma.levels[i].neg = (d[i] + 1) % (B + 1);
                }
                const std::uint64_t rank = (static_cast<std::uint64_t>(s) << 40) | inner;
                if (kernel) {
                    const bool e1 = cr1.run_residue(sigma).levels.empty();
                    const bool e2 = cr2.run_residue(sigma).levels.empty();
                    if (e1 && !e2) {
                        acc.viol_ge = true;
                        if (!acc.strict1) acc.strict1 = SweepHit{rank, sigma};
                        if (!acc.viol2) acc.viol2 = SweepHit{rank, sigma};
                    } else if (e2 && !e1) {
                        acc.viol_le = true;
                        if (!acc.strict2) acc.strict2 = SweepHit{rank, sigma};
                        if (!acc.viol1) acc.viol1 = SweepHit{rank, sigma};
                    }
                } else {
                    run_pair(cr1, cr2, sigma, pp);
                    if (!pp.ge1) {
                        acc.viol_le = true;
                        if (!acc.viol1) acc.viol1 = SweepHit{rank, sigma};
                    }
                    if (!pp.ge2) {
                        acc.viol_ge = true;
                        if (!acc.viol2) acc.viol2 = SweepHit{rank, sigma};
                    }
                    if (pp.ge1 && !pp.ge2 && !acc.strict1) acc.strict1 = SweepHit{rank, sigma};
                    if (pp.ge2 && !pp.ge1 && !acc.strict2) acc.strict2 = SweepHit{rank, sigma};
                }
                if (abort_when_settled && acc.viol_le && acc.viol_ge && acc.strict1 &&
                    acc.strict2)
                    return;
                ++inner;
                int i = q - 1;
                while (i >= 1 && d[i] == cells - 1) d[i--] = 0;
                if (i < 1) break;
                ++d[i];
            }
        }
    };

    if (nt == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < nt; ++t) threads.emplace_back(worker, t);
        for (auto& th : threads) th.join();
    }
    SweepAcc out;
    for (const SweepAcc& a : accs) merge_acc(out, a);
    return out;
}

// Try to complete a pair of strict witnesses (first rule strictly ahead,
// second rule strictly ahead) from candidates, generic patterns, and finally
// the bounded sweep with residue-shrinking upgrades.
std::optional<std::pair<Witness, Witness>> find_profile_witnesses(
    const RuleExpr& r1, const RuleExpr& r2, const std::vector<Pairs>& pool,
    const Budget& budget) {
    CompiledRule cr1(r1), cr2(r2);
    std::optional<Witness> w1, w2;
    ProfilePair pp;
    auto consider = [&](const PsiEncoding& s) {
        run_pair(cr1, cr2, s, pp);
        if (pp.ge1 && !pp.ge2 && !w1) w1 = make_witness(s, pp);
        if (pp.ge2 && !pp.ge1 && !w2) w2 = make_witness(s, pp);
        return !(w1 && w2);
    };
    for (const Pairs& cand : pool) {
        if (cand.empty() || cand[0].first == 0 || cand[0].second == 0) continue;
        if (!consider(encoding_of(cand))) break;
    }
    if (!(w1 && w2))
        for_each_pattern(9, [&](const Pairs& p) { return consider(encoding_of(p)); });
    if (!(w1 && w2)) {
        SweepAcc acc = sweep(r1, r2, budget, false, true);
        if (!w1 && acc.strict1) consider(acc.strict1->seq);
        if (!w2 && acc.strict2) consider(acc.strict2->seq);
        if (!w1 && acc.viol2)
            if (auto shr = minus_residue(acc.viol2->seq, cr1)) consider(*shr);
        if (!w2 && acc.viol1)
            if (auto shr = minus_residue(acc.viol1->seq, cr2)) consider(*shr);
    }
    if (w1 && w2) return std::make_pair(*w1, *w2);
    return std::nullopt;
}

// Kernel counterpart: sequences one rule deletes entirely and the other
// leaves something of.
std::optional<std::pair<Witness, Witness>> find_kernel_witnesses(
    const RuleExpr& r1, const RuleExpr& r2, const std::vector<Pairs>& pool,
    const Budget& budget) {
    CompiledRule cr1(r1), cr2(r2);
    std::optional<Witness> w1, w2;
    ProfilePair pp;
    auto consider = [&](const PsiEncoding& s) {
        const bool e1 = cr1.run_residue(s).levels.empty();
        const bool e2 = cr2.run_residue(s).levels.empty();
        if (e1 == e2) return !(w1 && w2);
        run_pair(cr1, cr2, s, pp);
        if (e1 && !w1) w1 = make_witness(s, pp);
        if (e2 && !w2) w2 = make_witness(s, pp);
        return !(w1 && w2);
    };
    auto consider_with_shrink = [&](const PsiEncoding& s) {
        if (!consider(s)) return false;
        if (!w1)
            if (auto shr = minus_residue(s, cr1))
                if (!consider(*shr)) return false;
        if (!w2)
            if (auto shr = minus_residue(s, cr2))
                if (!consider(*shr)) return false;
        return true;
    };
    for (const Pairs& cand : pool) {
        if (cand.empty() || cand[0].first == 0 || cand[0].second == 0) continue;
        if (!consider_with_shrink(encoding_of(cand))) break;
    }
    if (!(w1 && w2))
        for_each_pattern(9, [&](const Pairs& p) { return consider(encoding_of(p)); });
    if (!(w1 && w2)) {
        SweepAcc acc = sweep(r1, r2, budget, true, true);
        if (!w1 && acc.strict1) consider(acc.strict1->seq);
        if (!w2 && acc.strict2) consider(acc.strict2->seq);
    }
    if (w1 && w2) return std::make_pair(*w1, *w2);
    return std::nullopt;
}

OrderVerdict exact_verdict(Relation rel, std::string method) {
    OrderVerdict v;
    v.relation = rel;
    v.method = std::move(method);
    return v;
}

OrderVerdict sweep_verdict(const RuleExpr& r1, const RuleExpr& r2, const Budget& budget,
                           bool kernel) {
    SweepAcc acc = sweep(r1, r2, budget, kernel, false);
    OrderVerdict v;
    v.budget = budget;
    v.method = kernel ? "bounded-kernel-search" : "bounded-profile-search";
    if (acc.viol_le && acc.viol_ge) {
        CompiledRule cr1(r1), cr2(r2);
        std::optional<Witness> w1, w2;
        ProfilePair pp;
        auto harvest = [&](const PsiEncoding& s) {
            run_pair(cr1, cr2, s, pp);
            if (pp.ge1 && !pp.ge2 && !w1) w1 = make_witness(s, pp);
            if (pp.ge2 && !pp.ge1 && !w2) w2 = make_witness(s, pp);
        };
        if (acc.strict1) harvest(acc.strict1->seq);
        if (acc.strict2) harvest(acc.strict2->seq);
        if (!w1 && acc.viol2)
            if (auto shr = minus_residue(acc.viol2->seq, cr1)) harvest(*shr);
        if (!w2 && acc.viol1)
            if (auto shr = minus_residue(acc.viol1->seq, cr2)) harvest(*shr);
        if (!(w1 && w2))
            for_each_pattern(9, [&](const Pairs& p) {
                harvest(encoding_of(p));
                return !(w1 && w2);
            });
        if (w1 && w2) {
            v.relation = Relation::Incomparable;
            v.witnesses = {*w1, *w2};
            return v;
        }
        // Incomparability observed but certificates stayed out of reach;
        // report the honest inconclusive verdict.
        v.relation = Relation::Undecided;
        v.surviving = "";
        return v;
    }
    v.relation = Relation::Undecided;
    if (!acc.viol_le && !acc.viol_ge)
        v.surviving = "<=>";
    else if (!acc.viol_le)
        v.surviving = "<=";
    else
        v.surviving = ">=";
    return v;
}

std::optional<Structural> structural_relation(const CanonicalRule& c1,
                                              const CanonicalRule& c2) {
    auto t1 = to_labels(c1);
    auto t2 = to_labels(c2);
    if (t1 && t2) {
        const bool le = labels_le(*t1, *t2), ge = labels_le(*t2, *t1);
        if (le) return Structural{Relation::Less, "label-partition", {}};
        if (ge) return Structural{Relation::Greater, "label-partition", {}};
        return Structural{Relation::Incomparable, "label-partition",
                          label_partition_pool(*t1, *t2)};
    }
    return compare_views(View{&c1, 0}, View{&c2, 0}, 0);
}

}  // namespace

// ---------------- public operations ----------------

bool profile_dominates(const DeletionProfile& p1, const DeletionProfile& p2) {
    if (p1.deleted.size() != p2.deleted.size())
        throw MismatchedBase("deletion profiles describe different encodings");
    for (std::size_t i = 0; i < p1.deleted.size(); ++i) {
        if (p1.deleted[i].magnitude != p2.deleted[i].magnitude)
            throw MismatchedBase("deletion profiles describe different encodings");
        if (p1.deleted[i].pos < p2.deleted[i].pos || p1.deleted[i].neg < p2.deleted[i].neg)
            return false;
    }
    return true;
}

std::string to_string(Relation r) {
    switch (r) {
        case Relation::Equal: return "equal";
        case Relation::Less: return "less";
        case Relation::Greater: return "greater";
        case Relation::Incomparable: return "incomparable";
        case Relation::Undecided: return "undecided";
    }
    return "undecided";
}

std::string to_string(RuleClass c) {
    switch (c) {
        case RuleClass::Least: return "least";
        case RuleClass::Atom: return "atom";
        case RuleClass::Maximal: return "maximal";
        case RuleClass::None: return "none";
    }
    return "none";
}

OrderVerdict compare(const RuleExpr& r1, const RuleExpr& r2, const Budget& budget) {
    const CanonicalRule c1 = factorize(r1), c2 = factorize(r2);
    if (c1 == c2) return exact_verdict(Relation::Equal, "canonical-form-equality");
    if (c1 == least_canonical()) return exact_verdict(Relation::Less, "least-element");
    if (c2 == least_canonical()) return exact_verdict(Relation::Greater, "least-element");
    auto st = structural_relation(c1, c2);
    if (st && st->rel == Relation::Equal) st.reset();  // inconsistent; fall to the sweep
    if (st) {
        if (st->rel != Relation::Incomparable) return exact_verdict(st->rel, st->method);
        if (auto ws = find_profile_witnesses(r1, r2, st->pool, budget)) {
            OrderVerdict v = exact_verdict(Relation::Incomparable, st->method);
            v.witnesses = {ws->first, ws->second};
            return v;
        }
    }
    return sweep_verdict(r1, r2, budget, false);
}

OrderVerdict bounded_profile_search(const RuleExpr& r1, const RuleExpr& r2,
                                    const Budget& budget) {
    return sweep_verdict(r1, r2, budget, false);
}

OrderVerdict kernel_compare(const RuleExpr& r1, const RuleExpr& r2, const Budget& budget) {
    const CanonicalRule c1 = factorize(r1), c2 = factorize(r2);
    if (c1 == c2) return exact_verdict(Relation::Equal, "canonical-form-equality");
    if (c1 == least_canonical()) return exact_verdict(Relation::Less, "least-element");
    if (c2 == least_canonical()) return exact_verdict(Relation::Greater, "least-element");
    auto st = structural_relation(c1, c2);
    if (st && st->rel == Relation::Equal) st.reset();
    if (st) {
        if (st->rel != Relation::Incomparable) return exact_verdict(st->rel, st->method);
        if (auto ws = find_kernel_witnesses(r1, r2, st->pool, budget)) {
            OrderVerdict v = exact_verdict(Relation::Incomparable, st->method);
            v.witnesses = {ws->first, ws->second};
            return v;
        }
    }
    return sweep_verdict(r1, r2, budget, true);
}

OrderVerdict bounded_kernel_search(const RuleExpr& r1, const RuleExpr& r2,
                                   const Budget& budget) {
    return sweep_verdict(r1, r2, budget, true);
}

RuleClass classify(const RuleExpr& r) {
    const CanonicalRule c = factorize(r);
    if (c == least_canonical()) return RuleClass::Least;
    if (c.finite) {
        if (c.prefix.size() == 1) {
            const Factor& f = c.prefix[0];
            if (f.omega.infinite_alternation && !(f.a == 1 && f.b == 1))
                return RuleClass::Atom;
        }
        if (c.prefix.size() == 2 && c.prefix[1] == least_factor() && c.prefix[0].a == 1 &&
            c.prefix[0].b == 1) {
            const OmegaWord& w = c.prefix[0].omega;
            if (!w.infinite_alternation && w.runs.size() >= 2 &&
                w.runs.back().count != kInfinity &&
                w.runs[w.runs.size() - 2].count == kInfinity)
                return RuleClass::Atom;
        }
    }
    auto blocks_maximal = [](const Factor& f) {
        return !f.omega.infinite_alternation && f.omega.runs.size() <= 1 &&
               !(f.a == 1 && f.b == 1);
    };
    for (const Factor& f : c.prefix)
        if (!blocks_maximal(f)) return RuleClass::None;
    for (const Factor& f : c.cycle)
        if (!blocks_maximal(f)) return RuleClass::None;
    return RuleClass::Maximal;
}

// ---------------- label-stream lattice ----------------

void R123Labels::normalize() {
    const std::size_t n = cycle.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i)
            if (cycle[i] != cycle[i % d]) periodic = false;
        if (periodic) {
            cycle.resize(d);
            break;
        }
    }
    while (!prefix.empty() && prefix.back() == cycle.back()) {
        prefix.pop_back();
        std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    }
}

std::optional<R123Labels> to_labels(const CanonicalRule& c) {
    if (c.finite) return std::nullopt;
    R123Labels t;
    for (const Factor& f : c.prefix) {
        if (!f.omega.empty()) return std::nullopt;
        t.prefix.push_back(label_of(f));
    }
    for (const Factor& f : c.cycle) {
        if (!f.omega.empty()) return std::nullopt;
        t.cycle.push_back(label_of(f));
    }
    t.normalize();
    return t;
}

CanonicalRule from_labels(const R123Labels& t) {
    R123Labels n = t;
    n.normalize();
    CanonicalRule c;
    c.finite = false;
    for (const Label& l : n.prefix) c.prefix.push_back(Factor{OmegaWord{}, l.first, l.second});
    for (const Label& l : n.cycle) c.cycle.push_back(Factor{OmegaWord{}, l.first, l.second});
    return c;
}

bool labels_le(const R123Labels& t1, const R123Labels& t2) {
    const std::size_t window =
        std::max(t1.prefix.size(), t2.prefix.size()) + lcm_sz(t1.cycle.size(), t2.cycle.size());
    for (std::size_t i = 0; i < window; ++i) {
        const Label a = t1.at(i), b = t2.at(i);
        if (a != b && !is_bottom(a)) return false;
    }
    return true;
}

R123Labels meet123(const R123Labels& t1, const R123Labels& t2) {
    const std::size_t L = std::max(t1.prefix.size(), t2.prefix.size());
    const std::size_t C = lcm_sz(t1.cycle.size(), t2.cycle.size());
    R123Labels out;
    for (std::size_t i = 0; i < L; ++i) {
        const Label a = t1.at(i), b = t2.at(i);
        out.prefix.push_back(a == b ? a : Label{1, 1});
    }
    for (std::size_t k = 0; k < C; ++k) {
        const Label a = t1.at(L + k), b = t2.at(L + k);
        out.cycle.push_back(a == b ? a : Label{1, 1});
    }
    out.normalize();
    return out;
}

R123Labels join123(const R123Labels& t1, const R123Labels& t2) {
    const std::size_t L = std::max(t1.prefix.size(), t2.prefix.size());
    const std::size_t C = lcm_sz(t1.cycle.size(), t2.cycle.size());
    R123Labels out;
    auto joined = [](const Label& a, const Label& b) {
        if (a == b) return a;
        if (is_bottom(a)) return b;
        if (is_bottom(b)) return a;
        throw NoCommonUpperBoundInInterval(
            "labels disagree and neither is (1,1); the rules have no common upper bound "
            "in the interval");
    };
    for (std::size_t i = 0; i < L; ++i) out.prefix.push_back(joined(t1.at(i), t2.at(i)));
    for (std::size_t k = 0; k < C; ++k)
        out.cycle.push_back(joined(t1.at(L + k), t2.at(L + k)));
    out.normalize();
    return out;
}

std::vector<R123Labels> interval123(const R123Labels& r) {
    R123Labels base = r;
    base.normalize();
    for (const Label& l : base.cycle)
        if (!is_bottom(l))
            throw InfiniteSupport(
                "the cycle keeps a non-(1,1) label, so the interval below the rule is "
                "infinite");
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < base.prefix.size(); ++i)
        if (!is_bottom(base.prefix[i])) support.push_back(i);
    if (support.size() > 20)
        throw TooLarge("interval has more than 2^20 elements");
    std::vector<R123Labels> out;
    out.reserve(std::size_t{1} << support.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << support.size()); ++mask) {
        R123Labels member = base;
        for (std::size_t b = 0; b < support.size(); ++b)
            if (!(mask & (std::size_t{1} << b))) member.prefix[support[b]] = Label{1, 1};
        member.normalize();
        out.push_back(std::move(member));
    }
    return out;
}

PsiEncoding witness_for_factor(const Factor& f) {
    if (f.omega.absorbing())
        throw AbsorbingFactor("the factor's deletion word consumes every continuation");
    return encoding_of(gadget_pairs(f));
}

}  // namespace symmax
