#include "symmax/engine.hpp"

#include <algorithm>

namespace symmax {

namespace {

// In-place application of one elementary rule.  Returns true when the
// encoding changed.  All five rules require an active top level.
bool apply_inplace(int code, std::vector<Level>& levels) {
    if (levels.empty()) return false;
    Level& top = levels.front();
    if (top.pos == 0 || top.neg == 0) return false;
    switch (code) {
        case 1:
            if (top.pos > 1) {
                top.pos = 1;
                return true;
            }
            return false;
        case 2:
            if (top.neg > 1) {
                top.neg = 1;
                return true;
            }
            return false;
        case 3: {
            const int cancelled = std::min(top.pos, top.neg);
            top.pos -= cancelled;
            top.neg -= cancelled;
            if (top.pos == 0 && top.neg == 0) levels.erase(levels.begin());
            return true;
        }
        case 4:
            if (levels.size() > 1 && levels[1].pos > 0) {
                levels[1].pos = 0;
                if (levels[1].neg == 0) levels.erase(levels.begin() + 1);
                return true;
            }
            return false;
        case 5:
            if (levels.size() > 1 && levels[1].neg > 0) {
                levels[1].neg = 0;
                if (levels[1].pos == 0) levels.erase(levels.begin() + 1);
                return true;
            }
            return false;
        default:
            return false;
    }
}

// Deletions as the per-magnitude difference between a start and its residue.
// Valid because runs only ever remove occurrences.
DeletionProfile diff_profile(const PsiEncoding& start, const PsiEncoding& residue) {
    DeletionProfile profile;
    profile.deleted.reserve(start.levels.size());
    std::size_t j = 0;
    for (const Level& lv : start.levels) {
        int p = lv.pos;
        int m = lv.neg;
        if (j < residue.levels.size() && residue.levels[j].magnitude == lv.magnitude) {
            p -= residue.levels[j].pos;
            m -= residue.levels[j].neg;
            ++j;
        }
        profile.deleted.push_back(Level{lv.magnitude, p, m});
    }
    return profile;
}

struct Runner {
    PsiEncoding cur;
    long long actions = 0;
    std::vector<TraceStep>* trace = nullptr;

    void exec(const RuleExpr& rule) {
        switch (rule.kind) {
            case RuleExpr::Kind::Letter: {
                if (trace) {
                    PsiEncoding before = cur;
                    if (apply_inplace(static_cast<int>(rule.letter), cur.levels)) {
                        ++actions;
                        trace->push_back(TraceStep{
                            "r" + std::to_string(static_cast<int>(rule.letter)), std::move(before),
                            cur});
                    }
                } else if (apply_inplace(static_cast<int>(rule.letter), cur.levels)) {
                    ++actions;
                }
                return;
            }
            case RuleExpr::Kind::Concat:
                for (const RuleExpr& child : rule.children) exec(child);
                return;
            case RuleExpr::Kind::Star:
                // Repeat until a full pass changes nothing.  Terminates:
                // every action strictly decreases the total multiplicity.
                for (;;) {
                    const long long mark = actions;
                    exec(rule.children.front());
                    if (actions == mark) return;
                }
        }
    }
};

}  // namespace

PsiEncoding apply_elementary(RuleLetter rule, const PsiEncoding& e) {
    PsiEncoding out = e;
    apply_inplace(static_cast<int>(rule), out.levels);
    return out;
}

namespace {

// One basic step in place; false (and no change) when its requirement is
// unmet or the kind is invalid.
bool apply_basic_inplace(const BasicRule& rule, std::vector<Level>& levels) {
    switch (rule.kind) {
        case 1:
            if (levels.empty() || levels.front().pos <= 1) return false;
            levels.front().pos -= 1;
            break;
        case 2:
            if (levels.empty() || levels.front().neg <= 1) return false;
            levels.front().neg -= 1;
            break;
        case 3:
            if (levels.empty() || levels.front().pos == 0 || levels.front().neg == 0) return false;
            levels.front().pos -= 1;
            levels.front().neg -= 1;
            break;
        case 4: {
            const std::size_t idx = static_cast<std::size_t>(rule.position) - 1;
            if (rule.position < 2 || idx >= levels.size() || levels[idx].pos == 0) return false;
            levels[idx].pos -= 1;
            break;
        }
        case 5: {
            const std::size_t idx = static_cast<std::size_t>(rule.position) - 1;
            if (rule.position < 2 || idx >= levels.size() || levels[idx].neg == 0) return false;
            levels[idx].neg -= 1;
            break;
        }
        default:
            return false;
    }
    std::erase_if(levels, [](const Level& lv) { return lv.pos == 0 && lv.neg == 0; });
    return true;
}

}  // namespace

PsiEncoding apply_basic(const BasicRule& rule, const PsiEncoding& e) {
    PsiEncoding out = e;
    if (!apply_basic_inplace(rule, out.levels)) {
        throw PreconditionFailed("basic step " + std::to_string(rule.kind) + " at level " +
                                 std::to_string(rule.position) + ": requirement unmet");
    }
    return out;
}

BasicWord basic_step(BasicRule b) {
    BasicWord w;
    w.kind = BasicWord::Kind::Step;
    w.step = b;
    return w;
}

BasicWord basic_concat(std::vector<BasicWord> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    BasicWord w;
    w.kind = BasicWord::Kind::Concat;
    w.children = std::move(parts);
    return w;
}

BasicWord basic_star(BasicWord body) {
    BasicWord w;
    w.kind = BasicWord::Kind::Star;
    w.children.push_back(std::move(body));
    return w;
}

PsiEncoding run_basic_word(const BasicWord& word, const PsiEncoding& e) {
    struct BasicRunner {
        std::vector<Level> cur;
        long long actions = 0;

        void exec(const BasicWord& w) {
            switch (w.kind) {
                case BasicWord::Kind::Step:
                    if (apply_basic_inplace(w.step, cur)) ++actions;
                    return;
                case BasicWord::Kind::Concat:
                    for (const BasicWord& child : w.children) exec(child);
                    return;
                case BasicWord::Kind::Star:
                    for (;;) {
                        const long long mark = actions;
                        exec(w.children.front());
                        if (actions == mark) return;
                    }
            }
        }
    };
    BasicRunner runner{e.levels};
    runner.exec(word);
    PsiEncoding out;
    out.levels = std::move(runner.cur);
    return out;
}

bool profile_contains(const DeletionProfile& big, const DeletionProfile& small) {
    if (big.deleted.size() != small.deleted.size()) {
        throw MismatchedBase("deletion profiles describe different starting encodings");
    }
    for (std::size_t i = 0; i < big.deleted.size(); ++i) {
        if (big.deleted[i].magnitude != small.deleted[i].magnitude) {
            throw MismatchedBase("deletion profiles describe different starting encodings");
        }
        if (big.deleted[i].pos < small.deleted[i].pos ||
            big.deleted[i].neg < small.deleted[i].neg) {
            return false;
        }
    }
    return true;
}

RunResult run(const RuleExpr& rule, const PsiEncoding& start, bool want_trace) {
    Runner runner;
    runner.cur = start;
    std::vector<TraceStep> trace;
    if (want_trace) runner.trace = &trace;
    runner.exec(rule);
    RunResult result;
    result.profile = diff_profile(start, runner.cur);
    result.residue = std::move(runner.cur);
    result.trace = std::move(trace);
    return result;
}

int evaluate(const RuleExpr& rule, const SignedSequence& s, std::vector<TraceStep>* trace) {
    RunResult r = run(rule, encode(s), trace != nullptr);
    if (trace) *trace = std::move(r.trace);
    try {
        return value(r.residue);
    } catch (const NotAssociative&) {
        throw NotMadeAssociative("rule left the sequence without a value: residue " +
                                 to_string(r.residue));
    }
}

CompiledRule::CompiledRule(const RuleExpr& rule) {
    // Flatten the tree into ops; stars become begin/end markers.
    auto emit = [this](const RuleExpr& node, auto&& self) -> void {
        switch (node.kind) {
            case RuleExpr::Kind::Letter:
                ops_.push_back(Op{static_cast<int>(node.letter), 0});
                return;
            case RuleExpr::Kind::Concat:
                for (const RuleExpr& child : node.children) self(child, self);
                return;
            case RuleExpr::Kind::Star: {
                const int begin = static_cast<int>(ops_.size());
                ops_.push_back(Op{0, 0});
                self(node.children.front(), self);
                ops_.push_back(Op{-1, begin});
                return;
            }
        }
    };
    emit(rule, emit);
    marks_.assign(ops_.size(), 0);
}

void CompiledRule::exec() const {
    long long actions = 0;
    std::size_t pc = 0;
    while (pc < ops_.size()) {
        const Op& op = ops_[pc];
        if (op.code > 0) {
            if (apply_inplace(op.code, scratch_)) ++actions;
            ++pc;
        } else if (op.code == 0) {
            marks_[pc] = actions;
            ++pc;
        } else {  // star-end: loop while the last pass acted
            if (actions != marks_[op.arg]) {
                marks_[op.arg] = actions;
                pc = static_cast<std::size_t>(op.arg) + 1;
            } else {
                ++pc;
            }
        }
    }
}

void CompiledRule::run_profile(const PsiEncoding& start, std::vector<Level>& out) const {
    scratch_ = start.levels;
    exec();
    out.resize(start.levels.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < start.levels.size(); ++i) {
        const Level& lv = start.levels[i];
        int p = lv.pos;
        int m = lv.neg;
        if (j < scratch_.size() && scratch_[j].magnitude == lv.magnitude) {
            p -= scratch_[j].pos;
            m -= scratch_[j].neg;
            ++j;
        }
        out[i] = Level{lv.magnitude, p, m};
    }
}

PsiEncoding CompiledRule::run_residue(const PsiEncoding& start) const {
    scratch_ = start.levels;
    exec();
    PsiEncoding out;
    out.levels = scratch_;
    return out;
}

RuleExpr make_extraction_rule(const PsiEncoding& e, int k, int delta) {
    if (delta != 1 && delta != -1) throw PreconditionFailed("delta must be +1 or -1");
    if (!e.active()) throw PreconditionFailed("extraction needs an active top level");
    if (k < 1 || static_cast<std::size_t>(k) > e.size()) {
        throw PreconditionFailed("level index out of range");
    }
    const Level& target = e.levels[static_cast<std::size_t>(k) - 1];
    const int wanted = delta > 0 ? target.pos : target.neg;
    if (k == 1) {
        if (wanted <= 1) {
            throw PreconditionFailed("top-level extraction needs more than one occurrence of the wanted sign");
        }
        // Trim the other side to one element, then cancel: one survivor stays.
        std::vector<RuleExpr> parts;
        parts.push_back(make_letter(delta > 0 ? RuleLetter::r2 : RuleLetter::r1));
        parts.push_back(make_letter(RuleLetter::r3));
        return make_concat(std::move(parts));
    }
    if (wanted == 0) {
        throw PreconditionFailed("no occurrence of the wanted sign at that level");
    }
    std::vector<RuleExpr> parts;
    // Clear levels 2..k-1 entirely; each emptied level slides the next one up.
    for (int i = 2; i < k; ++i) {
        const Level& lv = e.levels[static_cast<std::size_t>(i) - 1];
        if (lv.pos > 0) parts.push_back(make_letter(RuleLetter::r4));
        if (lv.neg > 0) parts.push_back(make_letter(RuleLetter::r5));
    }
    // Clear the unwanted sign at level k, now sitting just below the top.
    if (delta > 0 && target.neg > 0) parts.push_back(make_letter(RuleLetter::r5));
    if (delta < 0 && target.pos > 0) parts.push_back(make_letter(RuleLetter::r4));
    // Collapse the top: trim both sides to one, cancel the last pair.
    parts.push_back(make_letter(RuleLetter::r1));
    parts.push_back(make_letter(RuleLetter::r2));
    parts.push_back(make_letter(RuleLetter::r3));
    return make_concat(std::move(parts));
}

}  // namespace symmax
