#include "symmax/hasse.hpp"

#include <algorithm>
#include <map>

#include "symmax/canonical.hpp"

namespace symmax {

HasseGraph build_hasse(const std::vector<RuleExpr>& rules, const Budget& budget) {
    std::map<std::string, RuleExpr> reps;  // canonical form -> representative
    for (const RuleExpr& r : rules) {
        std::string key = canonical_print(factorize(r));
        reps.emplace(std::move(key), r);
    }
    HasseGraph g;
    std::vector<const RuleExpr*> exprs;
    for (const auto& [key, expr] : reps) {
        g.nodes.push_back(key);
        exprs.push_back(&expr);
    }
    const std::size_t n = g.nodes.size();
    std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            OrderVerdict v = compare(*exprs[i], *exprs[j], budget);
            if (v.relation == Relation::Less)
                less[i][j] = true;
            else if (v.relation == Relation::Greater)
                less[j][i] = true;
            else if (v.relation == Relation::Undecided)
                g.undecided.emplace_back(i, j);
        }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (!less[u][v]) continue;
            bool covered = true;
            for (std::size_t w = 0; w < n && covered; ++w)
                if (less[u][w] && less[w][v]) covered = false;
            if (covered) g.edges.emplace_back(u, v);
        }
    return g;
}

std::string hasse_dot(const HasseGraph& g) {
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        return out;
    };
    std::string dot = "digraph rules {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        dot += "  n" + std::to_string(i) + " [label=\"" + escape(g.nodes[i]) + "\"];\n";
    for (const auto& [lo, hi] : g.edges)
        dot += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
    if (!g.undecided.empty()) {
        dot += "  // undecided pairs (no order established within budget):\n";
        for (const auto& [i, j] : g.undecided)
            dot += "  // n" + std::to_string(i) + " -> n" + std::to_string(j) +
                   " [style=dashed];\n";
    }
    dot += "}\n";
    return dot;
}

}  // namespace symmax
