#include "symmax/rule.hpp"

#include <cctype>
#include <sstream>

namespace symmax {

RuleExpr make_letter(RuleLetter l) {
    RuleExpr e;
    e.kind = RuleExpr::Kind::Letter;
    e.letter = l;
    return e;
}

RuleExpr make_concat(std::vector<RuleExpr> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    RuleExpr e;
    e.kind = RuleExpr::Kind::Concat;
    e.children = std::move(parts);
    return e;
}

RuleExpr make_star(RuleExpr body) {
    RuleExpr e;
    e.kind = RuleExpr::Kind::Star;
    e.children.push_back(std::move(body));
    return e;
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t i = 0;

    void skip_blanks() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }

    bool consume(const std::string& token) {
        skip_blanks();
        if (text.compare(i, token.size(), token) == 0) {
            i += token.size();
            return true;
        }
        return false;
    }

    bool at_end() {
        skip_blanks();
        return i == text.size();
    }

    char peek() {
        skip_blanks();
        return i < text.size() ? text[i] : '\0';
    }

    RuleExpr parse_atom() {
        skip_blanks();
        std::size_t start = i;
        if (consume("(")) {
            RuleExpr inner = parse_word(true);
            if (!consume(")")) throw ParseError("expected ')'", i);
            return inner;
        }
        // "rN" or the Greek letter rho (U+03C1) followed by a digit.
        if (consume("r") || consume("\xcf\x81")) {
            if (i < text.size() && text[i] >= '1' && text[i] <= '5') {
                int n = text[i] - '0';
                ++i;
                return make_letter(static_cast<RuleLetter>(n));
            }
            throw ParseError("expected a digit 1..5 after the rule letter", i);
        }
        if (consume("@")) {
            std::string name = "@";
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                name += text[i++];
            }
            auto it = registry().find(name);
            if (it == registry().end()) throw ParseError("unknown rule name " + name, start);
            return it->second;
        }
        if (consume("\xce\xb5")) {  // epsilon: the empty word
            return RuleExpr{};
        }
        throw ParseError("expected a rule letter, '(', or '@name'", start);
    }

    RuleExpr parse_word(bool inside_parens) {
        std::vector<RuleExpr> parts;
        for (;;) {
            skip_blanks();
            if (at_end() || (inside_parens && peek() == ')')) break;
            RuleExpr atom = parse_atom();
            if (consume("*")) atom = make_star(std::move(atom));
            parts.push_back(std::move(atom));
        }
        return make_concat(std::move(parts));
    }
};

void print_into(const RuleExpr& rule, std::ostringstream& out, bool parenthesize_concat) {
    switch (rule.kind) {
        case RuleExpr::Kind::Letter:
            out << 'r' << static_cast<int>(rule.letter);
            return;
        case RuleExpr::Kind::Star:
            if (rule.children.front().kind == RuleExpr::Kind::Letter) {
                print_into(rule.children.front(), out, false);
            } else {
                out << '(';
                print_into(rule.children.front(), out, false);
                out << ')';
            }
            out << '*';
            return;
        case RuleExpr::Kind::Concat:
            if (rule.children.empty()) {
                out << "\xce\xb5";
                return;
            }
            if (parenthesize_concat) out << '(';
            for (std::size_t i = 0; i < rule.children.size(); ++i) {
                if (i) out << ' ';
                print_into(rule.children[i], out,
                           rule.children[i].kind == RuleExpr::Kind::Concat);
            }
            if (parenthesize_concat) out << ')';
            return;
    }
}

}  // namespace

RuleExpr parse_rule(const std::string& text) {
    Parser parser{text};
    RuleExpr rule = parser.parse_word(false);
    if (!parser.at_end()) throw ParseError("unexpected trailing input", parser.i);
    return rule;
}

std::string print_rule(const RuleExpr& rule) {
    std::ostringstream out;
    print_into(rule, out, false);
    return out.str();
}

const std::map<std::string, RuleExpr>& registry() {
    static const std::map<std::string, RuleExpr> table = [] {
        auto word = [](const std::string& text) {
            Parser parser{text};
            return parser.parse_word(false);
        };
        std::map<std::string, RuleExpr> t;
        t["@zero"] = word("r3*");
        t["@plus"] = word("(r1 r2 r3)*");
        t["@least"] = word("(r4 r5)* r1 r2 r3");
        t["@pess"] = word("(r4 r5)* r1 r3");
        t["@opt"] = word("(r4 r5)* r2 r3");
        t["@left"] = word("(r1 r3)*");
        t["@right"] = word("(r2 r3)*");
        return t;
    }();
    return table;
}

}  // namespace symmax
