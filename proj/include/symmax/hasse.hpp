#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "symmax/order.hpp"
#include "symmax/rule.hpp"

namespace symmax {

// Covering relation of a finite set of rules under the deletion order.
struct HasseGraph {
    // Canonical forms, deduplicated and sorted; indices below refer here.
    std::vector<std::string> nodes;
    // Covering pairs (lower, upper): lower < upper with nothing strictly
    // between, taken over the exactly-decided strict relations.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    // Pairs (i < j) the comparison left undecided within budget.
    std::vector<std::pair<std::size_t, std::size_t>> undecided;
};

// Compares every pair (rules equal up to canonical form collapse into one
// node) and reduces the strict order transitively.
HasseGraph build_hasse(const std::vector<RuleExpr>& rules, const Budget& budget = {});

// DOT rendering, upward order (rankdir=BT); nodes are labelled with their
// canonical form.  Undecided pairs appear as dashed edges inside a trailing
// comment block so the graph itself stays a transitive reduction.
std::string hasse_dot(const HasseGraph& g);

}  // namespace symmax
