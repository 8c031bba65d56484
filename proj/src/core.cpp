#include "symmax/core.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

namespace symmax {

int symmax(int a, int b) {
    if (b == -a) return 0;
    const int m = std::max(std::abs(a), std::abs(b));
    if (-a == m || -b == m) return -m;
    return m;
}

SignedSequence SignedSequence::of(const std::vector<int>& raw) {
    SignedSequence s;
    s.values.reserve(raw.size());
    for (int v : raw) {
        if (v != 0) s.values.push_back(v);
    }
    return s;
}

PsiEncoding PsiEncoding::from_pairs(const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Level> levels;
    levels.reserve(pairs.size());
    int magnitude = static_cast<int>(pairs.size());
    for (const auto& [p, m] : pairs) {
        levels.push_back(Level{magnitude--, p, m});
    }
    return from_levels(std::move(levels));
}

PsiEncoding PsiEncoding::from_levels(std::vector<Level> levels) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Level& lv = levels[i];
        if (lv.magnitude <= 0) throw PreconditionFailed("level magnitudes must be positive");
        if (lv.pos < 0 || lv.neg < 0) throw PreconditionFailed("level counts must be nonnegative");
        if (lv.pos == 0 && lv.neg == 0) throw PreconditionFailed("level with no occurrences");
        if (i > 0 && levels[i - 1].magnitude <= lv.magnitude) {
            throw PreconditionFailed("level magnitudes must be strictly decreasing");
        }
    }
    PsiEncoding e;
    e.levels = std::move(levels);
    return e;
}

int PsiEncoding::total_multiplicity() const {
    int total = 0;
    for (const Level& lv : levels) total += lv.pos + lv.neg;
    return total;
}

PsiEncoding encode(const SignedSequence& s) {
    std::map<int, std::pair<int, int>, std::greater<int>> byMagnitude;
    for (int v : s.values) {
        auto& [p, m] = byMagnitude[std::abs(v)];
        (v > 0 ? p : m) += 1;
    }
    std::vector<Level> levels;
    levels.reserve(byMagnitude.size());
    for (const auto& [magnitude, pm] : byMagnitude) {
        levels.push_back(Level{magnitude, pm.first, pm.second});
    }
    PsiEncoding e;
    e.levels = std::move(levels);
    return e;
}

SignedSequence decode(const PsiEncoding& e) {
    SignedSequence s;
    s.values.reserve(static_cast<std::size_t>(e.total_multiplicity()));
    for (const Level& lv : e.levels) {
        for (int i = 0; i < lv.pos; ++i) s.values.push_back(lv.magnitude);
        for (int i = 0; i < lv.neg; ++i) s.values.push_back(-lv.magnitude);
    }
    return s;
}

bool fulfills_associativity(const SignedSequence& s) {
    if (s.size() <= 2) return true;
    const auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
    return *mx != -*mn;
}

bool fulfills_associativity(const PsiEncoding& e) {
    if (e.total_multiplicity() <= 2) return true;
    return e.levels.front().pos == 0 || e.levels.front().neg == 0;
}

int value(const PsiEncoding& e) {
    if (e.empty()) return 0;
    const Level& top = e.levels.front();
    if (top.pos > 0 && top.neg > 0) {
        if (e.total_multiplicity() == 2) return 0;  // cancelling pair
        throw NotAssociative("sequence has no unambiguous value");
    }
    return top.pos > 0 ? top.magnitude : -top.magnitude;
}

namespace {

void skip_blanks(const std::string& text, std::size_t& i) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
}

int parse_int(const std::string& text, std::size_t& i, const char* what) {
    skip_blanks(text, i);
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) throw ParseError(std::string("expected ") + what, start);
    return std::stoi(text.substr(start, i - start));
}

void expect(const std::string& text, std::size_t& i, char c) {
    skip_blanks(text, i);
    if (i >= text.size() || text[i] != c) {
        throw ParseError(std::string("expected '") + c + "'", i);
    }
    ++i;
}

bool is_epsilon_text(const std::string& text) {
    std::string stripped;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
    }
    return stripped.empty() || stripped == "\xce\xb5";  // U+03B5
}

}  // namespace

SignedSequence parse_sequence(const std::string& text) {
    if (is_epsilon_text(text)) return SignedSequence{};
    std::vector<int> raw;
    std::size_t i = 0;
    for (;;) {
        raw.push_back(parse_int(text, i, "integer"));
        skip_blanks(text, i);
        if (i == text.size()) break;
        expect(text, i, ',');
    }
    return SignedSequence::of(raw);
}

std::string to_string(const SignedSequence& s) {
    if (s.empty()) return "\xce\xb5";
    std::ostringstream out;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (i) out << ',';
        out << s.values[i];
    }
    return out.str();
}

PsiEncoding parse_psi(const std::string& text) {
    if (is_epsilon_text(text)) return PsiEncoding{};
    // Decide between the implicit form "(p,m)(p,m)" and the explicit form
    // "n:(p,m);n:(p,m)" by looking at the first non-blank character.
    std::size_t i = 0;
    skip_blanks(text, i);
    if (i < text.size() && text[i] == '(') {
        std::vector<std::pair<int, int>> pairs;
        while (true) {
            skip_blanks(text, i);
            if (i == text.size()) break;
            expect(text, i, '(');
            int p = parse_int(text, i, "count");
            expect(text, i, ',');
            int m = parse_int(text, i, "count");
            expect(text, i, ')');
            pairs.emplace_back(p, m);
        }
        if (pairs.empty()) throw ParseError("expected at least one pair", 0);
        return PsiEncoding::from_pairs(pairs);
    }
    std::vector<Level> levels;
    for (;;) {
        int magnitude = parse_int(text, i, "magnitude");
        expect(text, i, ':');
        expect(text, i, '(');
        int p = parse_int(text, i, "count");
        expect(text, i, ',');
        int m = parse_int(text, i, "count");
        expect(text, i, ')');
        levels.push_back(Level{magnitude, p, m});
        skip_blanks(text, i);
        if (i == text.size()) break;
        expect(text, i, ';');
        skip_blanks(text, i);
        if (i == text.size()) break;  // allow a trailing separator
    }
    return PsiEncoding::from_levels(std::move(levels));
}

std::string to_string(const PsiEncoding& e) {
    if (e.empty()) return "\xce\xb5";
    bool implicit = true;
    int expected = static_cast<int>(e.levels.size());
    for (const Level& lv : e.levels) {
        if (lv.magnitude != expected--) {
            implicit = false;
            break;
        }
    }
    std::ostringstream out;
    if (implicit) {
        for (const Level& lv : e.levels) out << '(' << lv.pos << ',' << lv.neg << ')';
    } else {
        for (std::size_t i = 0; i < e.levels.size(); ++i) {
            if (i) out << ';';
            const Level& lv = e.levels[i];
            out << lv.magnitude << ":(" << lv.pos << ',' << lv.neg << ')';
        }
    }
    return out.str();
}

}  // namespace symmax
