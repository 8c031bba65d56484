#pragma once

#include <map>
#include <string>
#include <vector>

#include "symmax/core.hpp"

namespace symmax {

// -------- rule words --------

// The five rewriting letters.  r1/r2 trim the top-level sign counts to one,
// r3 cancels matched top-level pairs, r4/r5 clear one side of the second
// level.  Their exact semantics live in engine.hpp.
enum class RuleLetter { r1 = 1, r2 = 2, r3 = 3, r4 = 4, r5 = 5 };

// A rule word: concatenations and stars over the five letters.  An empty
// Concat is the empty word.
struct RuleExpr {
    enum class Kind { Letter, Concat, Star };

    Kind kind = Kind::Concat;
    RuleLetter letter = RuleLetter::r1;   // valid when kind == Letter
    std::vector<RuleExpr> children;       // Concat: 0..n, Star: exactly 1

    bool operator==(const RuleExpr&) const = default;
};

RuleExpr make_letter(RuleLetter l);
RuleExpr make_concat(std::vector<RuleExpr> parts);  // unwraps a singleton
RuleExpr make_star(RuleExpr body);

// Grammar:  rule := item+ | epsilon ;  item := atom "*"? ;
//           atom := "r1".."r5" | "(" rule ")" | "@name"
// Letters may also be written with a leading Greek rho.  "@name" expands a
// registry entry in place.
RuleExpr parse_rule(const std::string& text);
std::string print_rule(const RuleExpr& rule);

// Named rules: @zero, @plus, @least, @pess, @opt, @left, @right.
const std::map<std::string, RuleExpr>& registry();

}  // namespace symmax
