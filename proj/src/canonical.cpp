#include "symmax/canonical.hpp"

#include <algorithm>

namespace symmax {

namespace {

// Appends one run to an omega word, merging with a trailing run of the same
// letter (an unbounded run absorbs everything the same letter adds later).
void append_run(OmegaWord& w, int letter, long long count) {
    if (w.infinite_alternation) return;  // already consumes everything below top
    if (!w.runs.empty() && w.runs.back().letter == letter) {
        Run& last = w.runs.back();
        if (last.count != kInfinity)
            last.count = (count == kInfinity) ? kInfinity : last.count + count;
        return;
    }
    w.runs.push_back(Run{letter, count});
}

void append_omega(OmegaWord& dst, const OmegaWord& src) {
    if (dst.infinite_alternation) return;
    if (src.infinite_alternation) {
        // A word with infinitely many alternations consumes everything below
        // the top level no matter what precedes it.
        dst.infinite_alternation = true;
        dst.runs.clear();
        return;
    }
    for (const Run& r : src.runs) append_run(dst, r.letter, r.count);
}

// Letters collected before the factor's closing cancellation.
struct Pending {
    OmegaWord omega;
    int a = 0;
    int b = 0;

    bool empty() const { return omega.empty() && a == 0 && b == 0; }
};

Factor compose(const Pending& p, const Factor& f) {
    Factor out;
    out.omega = p.omega;
    append_omega(out.omega, f.omega);
    out.a = p.a | f.a;
    out.b = p.b | f.b;
    return out;
}

bool contains_cancel(const RuleExpr& e) {
    switch (e.kind) {
        case RuleExpr::Kind::Letter:
            return e.letter == RuleLetter::r3;
        default:
            return std::any_of(e.children.begin(), e.children.end(), contains_cancel);
    }
}

void letters_present(const RuleExpr& e, bool& has1, bool& has2, bool& has4, bool& has5) {
    switch (e.kind) {
        case RuleExpr::Kind::Letter:
            switch (e.letter) {
                case RuleLetter::r1: has1 = true; break;
                case RuleLetter::r2: has2 = true; break;
                case RuleLetter::r4: has4 = true; break;
                case RuleLetter::r5: has5 = true; break;
                default: break;
            }
            return;
        default:
            for (const RuleExpr& c : e.children) letters_present(c, has1, has2, has4, has5);
    }
}

// The factor stream a word denotes: finitely many emitted factors plus either
// trailing letters (pending) or, once a star containing the cancellation
// letter is reached, an infinite periodic continuation.
struct Stream {
    std::vector<Factor> emitted;
    Pending pending;
    bool closed = false;
    std::vector<Factor> cycle;  // valid iff closed
};

void walk(const RuleExpr& e, Stream& st) {
    if (st.closed) return;  // dead code after an infinite stream
    switch (e.kind) {
        case RuleExpr::Kind::Letter:
            switch (e.letter) {
                case RuleLetter::r1: st.pending.a = 1; return;
                case RuleLetter::r2: st.pending.b = 1; return;
                case RuleLetter::r4: append_run(st.pending.omega, 4, 1); return;
                case RuleLetter::r5: append_run(st.pending.omega, 5, 1); return;
                case RuleLetter::r3:
                    st.emitted.push_back(Factor{st.pending.omega, st.pending.a, st.pending.b});
                    st.pending = Pending{};
                    return;
            }
            return;
        case RuleExpr::Kind::Concat:
            for (const RuleExpr& c : e.children) walk(c, st);
            return;
        case RuleExpr::Kind::Star: {
            const RuleExpr& body = e.children.front();
            if (!contains_cancel(body)) {
                // Letter-only group: repetition turns its below-top letters
                // into unbounded runs (both letters: the alternating word)
                // and its top-trim letters into plain bits.
                bool has1 = false, has2 = false, has4 = false, has5 = false;
                letters_present(body, has1, has2, has4, has5);
                if (has4 && has5) {
                    st.pending.omega.infinite_alternation = true;
                    st.pending.omega.runs.clear();
                } else if (has4) {
                    append_run(st.pending.omega, 4, kInfinity);
                } else if (has5) {
                    append_run(st.pending.omega, 5, kInfinity);
                }
                if (has1) st.pending.a = 1;
                if (has2) st.pending.b = 1;
                return;
            }
            // The star's body emits factors; iterating it forever makes the
            // stream eventually periodic and everything afterwards dead.
            Stream sub;
            walk(body, sub);
            st.emitted.push_back(compose(st.pending, sub.emitted.front()));
            st.emitted.insert(st.emitted.end(), sub.emitted.begin() + 1, sub.emitted.end());
            if (sub.closed) {
                st.cycle = sub.cycle;
            } else {
                st.cycle.push_back(compose(sub.pending, sub.emitted.front()));
                st.cycle.insert(st.cycle.end(), sub.emitted.begin() + 1, sub.emitted.end());
            }
            st.closed = true;
            st.pending = Pending{};
            return;
        }
    }
}

// Shortest cycle whose repetition reproduces `cycle`.
std::vector<Factor> primitive_cycle(std::vector<Factor> cycle) {
    const std::size_t n = cycle.size();
    for (std::size_t d = 1; d <= n / 2; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = cycle[i] == cycle[i - d];
        if (ok) {
            cycle.resize(d);
            return cycle;
        }
    }
    return cycle;
}

CanonicalRule finalize(Stream st) {
    // Truncate at the first absorbing factor: its cancellation leaves the top
    // single-signed (or empty) with nothing actionable below, so no later
    // factor can fire.
    for (std::size_t i = 0; i < st.emitted.size(); ++i) {
        if (st.emitted[i].omega.absorbing()) {
            CanonicalRule c;
            c.prefix.assign(st.emitted.begin(), st.emitted.begin() + static_cast<long>(i) + 1);
            c.finite = true;
            return c;
        }
    }
    if (!st.closed)
        throw NotWellFormed("rule does not reduce every input to a value: the factor stream "
                            "ends without an absorbing deletion word");
    for (std::size_t j = 0; j < st.cycle.size(); ++j) {
        if (st.cycle[j].omega.absorbing()) {
            CanonicalRule c;
            c.prefix = st.emitted;
            c.prefix.insert(c.prefix.end(), st.cycle.begin(),
                            st.cycle.begin() + static_cast<long>(j) + 1);
            c.finite = true;
            return c;
        }
    }
    CanonicalRule c;
    c.prefix = st.emitted;
    c.finite = false;
    c.cycle = primitive_cycle(st.cycle);
    // Minimal prefix: a prefix ending with the cycle's last factor is the
    // same stream as the rotated-cycle form without it.
    while (!c.prefix.empty() && c.prefix.back() == c.cycle.back()) {
        c.prefix.pop_back();
        std::rotate(c.cycle.begin(), c.cycle.end() - 1, c.cycle.end());
    }
    return c;
}

}  // namespace

CanonicalRule factorize(const RuleExpr& r) {
    Stream st;
    walk(r, st);
    return finalize(std::move(st));
}

bool well_formed(const RuleExpr& r) {
    Stream st;
    walk(r, st);
    if (st.closed) return true;
    return std::any_of(st.emitted.begin(), st.emitted.end(),
                       [](const Factor& f) { return f.omega.absorbing(); });
}

bool equivalent(const RuleExpr& r1, const RuleExpr& r2) {
    return factorize(r1) == factorize(r2);
}

std::string canonical_print(const Factor& f) {
    std::string out;
    auto emit = [&](const std::string& piece) {
        if (!out.empty()) out += ' ';
        out += piece;
    };
    if (f.omega.infinite_alternation) {
        emit("(r4 r5)*");
    } else {
        for (const Run& r : f.omega.runs) {
            const std::string letter = r.letter == 4 ? "r4" : "r5";
            if (r.count == kInfinity) {
                emit(letter + "*");
            } else {
                for (long long i = 0; i < r.count; ++i) emit(letter);
            }
        }
    }
    if (f.a) emit("r1");
    if (f.b) emit("r2");
    emit("r3");
    return out;
}

std::string canonical_print(const CanonicalRule& c) {
    std::string out;
    auto emit = [&](const std::string& piece) {
        if (!out.empty()) out += ' ';
        out += piece;
    };
    for (const Factor& f : c.prefix) emit(canonical_print(f));
    if (!c.finite) {
        std::string cyc;
        for (const Factor& f : c.cycle) {
            if (!cyc.empty()) cyc += ' ';
            cyc += canonical_print(f);
        }
        emit("(" + cyc + ")*");
    }
    return out;
}

RuleExpr to_rule_expr(const CanonicalRule& c) {
    return parse_rule(canonical_print(c));
}

}  // namespace symmax
