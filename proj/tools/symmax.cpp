#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "symmax/canonical.hpp"
#include "symmax/core.hpp"
#include "symmax/engine.hpp"
#include "symmax/hasse.hpp"
#include "symmax/oracle.hpp"
#include "symmax/order.hpp"
#include "symmax/rule.hpp"

using nlohmann::json;
using namespace symmax;

namespace {

json levels_json(const std::vector<Level>& levels) {
    json arr = json::array();
    for (const Level& lv : levels)
        arr.push_back({{"magnitude", lv.magnitude}, {"pos", lv.pos}, {"neg", lv.neg}});
    return arr;
}

std::string profile_text(const DeletionProfile& p) {
    if (p.deleted.empty()) return "\xce\xb5";
    std::ostringstream out;
    for (std::size_t i = 0; i < p.deleted.size(); ++i) {
        if (i) out << ';';
        out << p.deleted[i].magnitude << ":(" << p.deleted[i].pos << ','
            << p.deleted[i].neg << ')';
    }
    return out.str();
}

json witness_json(const Witness& w) {
    return {{"sequence", levels_json(w.sequence.levels)},
            {"sequenceText", to_string(w.sequence)},
            {"left", levels_json(w.left.deleted)},
            {"leftText", profile_text(w.left)},
            {"right", levels_json(w.right.deleted)},
            {"rightText", profile_text(w.right)}};
}

std::vector<RuleExpr> read_rules_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open rules file: " + path);
    std::vector<RuleExpr> rules;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r\n");
        rules.push_back(parse_rule(line.substr(b, e - b + 1)));
    }
    return rules;
}

Budget env_budget() {
    Budget b;
    if (const char* env = std::getenv("SYMMAX_BUDGET")) {
        int q = 0, c = 0;
        if (std::sscanf(env, "%d,%d", &q, &c) == 2 && q >= 1 && c >= 1) {
            b.max_levels = q;
            b.max_count = c;
        }
    }
    return b;
}

R123Labels labels_or_throw(const std::string& text) {
    auto t = to_labels(factorize(parse_rule(text)));
    if (!t)
        throw PreconditionFailed(
            "rule uses below-top letters; meet/join/interval operate on the label "
            "sublattice");
    return *t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric-maximum calculus: evaluation, canonical forms, and the "
                 "order on computation rules"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json_out = false;
    app.add_flag("--json", json_out, "machine-readable output");

    int opt_levels = -1, opt_count = -1;
    int rc = 0;

    auto budget = [&] {
        Budget b = env_budget();
        if (opt_levels >= 1) b.max_levels = opt_levels;
        if (opt_count >= 1) b.max_count = opt_count;
        return b;
    };

    // ---- eval ----
    std::string eval_rule, eval_seq;
    bool eval_trace = false;
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a sequence under a rule");
    cmd_eval->add_option("--rule", eval_rule, "rule word")->required();
    cmd_eval->add_option("--seq", eval_seq, "comma-separated integers")->required();
    cmd_eval->add_flag("--trace", eval_trace, "print one line per action");
    cmd_eval->callback([&] {
        RuleExpr r = parse_rule(eval_rule);
        SignedSequence s = parse_sequence(eval_seq);
        std::vector<TraceStep> tr;
        const int v = evaluate(r, s, eval_trace ? &tr : nullptr);
        if (json_out) {
            json j{{"value", v}};
            if (eval_trace) {
                json t = json::array();
                for (const TraceStep& st : tr)
                    t.push_back({{"action", st.action},
                                 {"before", to_string(st.before)},
                                 {"after", to_string(st.after)}});
                j["trace"] = t;
            }
            std::cout << j.dump() << "\n";
        } else {
            for (const TraceStep& st : tr)
                std::cout << st.action << ": " << to_string(st.before) << " -> "
                          << to_string(st.after) << "\n";
            std::cout << v << "\n";
        }
    });

    // ---- encode ----
    std::string enc_seq;
    auto* cmd_encode = app.add_subcommand("encode", "encode a sequence into levels");
    cmd_encode->add_option("--seq", enc_seq)->required();
    cmd_encode->callback([&] {
        PsiEncoding e = encode(parse_sequence(enc_seq));
        if (json_out)
            std::cout << json{{"encoding", to_string(e)}, {"levels", levels_json(e.levels)}}
                             .dump()
                      << "\n";
        else
            std::cout << to_string(e) << "\n";
    });

    // ---- canon ----
    std::string canon_rule;
    auto* cmd_canon = app.add_subcommand("canon", "canonical form of a rule");
    cmd_canon->add_option("--rule", canon_rule)->required();
    cmd_canon->callback([&] {
        const std::string c = canonical_print(factorize(parse_rule(canon_rule)));
        if (json_out)
            std::cout << json{{"canonical", c}}.dump() << "\n";
        else
            std::cout << c << "\n";
    });

    // ---- equiv ----
    std::vector<std::string> equiv_rules;
    auto* cmd_equiv = app.add_subcommand("equiv", "are two rules equivalent?");
    cmd_equiv->add_option("--rule", equiv_rules)->expected(2)->required();
    cmd_equiv->callback([&] {
        const bool eq = equivalent(parse_rule(equiv_rules[0]), parse_rule(equiv_rules[1]));
        if (json_out)
            std::cout << json{{"equivalent", eq}}.dump() << "\n";
        else
            std::cout << (eq ? "equivalent" : "not equivalent") << "\n";
        rc = eq ? 0 : 1;
    });

    // ---- wellformed ----
    std::string wf_rule;
    auto* cmd_wf = app.add_subcommand("wellformed", "does the rule define a value everywhere?");
    cmd_wf->add_option("--rule", wf_rule)->required();
    cmd_wf->callback([&] {
        const bool wf = well_formed(parse_rule(wf_rule));
        if (json_out)
            std::cout << json{{"wellFormed", wf}}.dump() << "\n";
        else
            std::cout << (wf ? "well-formed" : "not well-formed") << "\n";
        rc = wf ? 0 : 3;
    });

    // ---- compare ----
    std::vector<std::string> cmp_rules;
    auto* cmd_cmp = app.add_subcommand("compare", "order between two rules");
    cmd_cmp->add_option("--rule", cmp_rules)->expected(2)->required();
    cmd_cmp->add_option("--max-levels", opt_levels, "sweep budget: encoding levels");
    cmd_cmp->add_option("--max-count", opt_count, "sweep budget: per-sign count");
    cmd_cmp->callback([&] {
        OrderVerdict v = compare(parse_rule(cmp_rules[0]), parse_rule(cmp_rules[1]), budget());
        if (json_out) {
            json j{{"relation", to_string(v.relation)}, {"method", v.method}};
            if (!v.witnesses.empty()) {
                json ws = json::array();
                for (const Witness& w : v.witnesses) ws.push_back(witness_json(w));
                j["witnesses"] = ws;
            }
            if (v.budget)
                j["budget"] = {{"maxLevels", v.budget->max_levels},
                               {"maxCount", v.budget->max_count}};
            if (!v.surviving.empty()) j["surviving"] = v.surviving;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "relation: " << to_string(v.relation) << "\n";
            std::cout << "method: " << v.method << "\n";
            for (std::size_t i = 0; i < v.witnesses.size(); ++i) {
                const Witness& w = v.witnesses[i];
                std::cout << "witness " << (i + 1) << ": sequence=" << to_string(w.sequence)
                          << " left=" << profile_text(w.left)
                          << " right=" << profile_text(w.right) << "\n";
            }
            if (v.budget)
                std::cout << "budget: " << v.budget->max_levels << ","
                          << v.budget->max_count << "\n";
            if (!v.surviving.empty()) std::cout << "surviving: " << v.surviving << "\n";
        }
        rc = v.relation == Relation::Undecided ? 4 : 0;
    });

    // ---- classify ----
    std::string cls_rule;
    auto* cmd_cls = app.add_subcommand("classify", "least / atom / maximal / none");
    cmd_cls->add_option("--rule", cls_rule)->required();
    cmd_cls->callback([&] {
        const std::string c = to_string(classify(parse_rule(cls_rule)));
        if (json_out)
            std::cout << json{{"class", c}}.dump() << "\n";
        else
            std::cout << c << "\n";
    });

    // ---- meet / join ----
    std::vector<std::string> meet_rules, join_rules;
    auto* cmd_meet = app.add_subcommand("meet", "greatest lower bound (label rules)");
    cmd_meet->add_option("--rule", meet_rules)->expected(2)->required();
    cmd_meet->callback([&] {
        R123Labels m = meet123(labels_or_throw(meet_rules[0]), labels_or_throw(meet_rules[1]));
        const std::string c = canonical_print(from_labels(m));
        if (json_out)
            std::cout << json{{"canonical", c}}.dump() << "\n";
        else
            std::cout << c << "\n";
    });
    auto* cmd_join = app.add_subcommand("join", "least upper bound in the interval (label rules)");
    cmd_join->add_option("--rule", join_rules)->expected(2)->required();
    cmd_join->callback([&] {
        R123Labels m = join123(labels_or_throw(join_rules[0]), labels_or_throw(join_rules[1]));
        const std::string c = canonical_print(from_labels(m));
        if (json_out)
            std::cout << json{{"canonical", c}}.dump() << "\n";
        else
            std::cout << c << "\n";
    });

    // ---- interval ----
    std::string intv_rule;
    auto* cmd_intv = app.add_subcommand("interval", "all rules below a label rule");
    cmd_intv->add_option("--rule", intv_rule)->required();
    cmd_intv->callback([&] {
        std::vector<R123Labels> members = interval123(labels_or_throw(intv_rule));
        if (json_out) {
            json arr = json::array();
            for (const R123Labels& m : members) arr.push_back(canonical_print(from_labels(m)));
            std::cout << json{{"members", arr}}.dump() << "\n";
        } else {
            for (const R123Labels& m : members)
                std::cout << canonical_print(from_labels(m)) << "\n";
        }
    });

    // ---- hasse ----
    std::string hasse_file;
    std::vector<std::string> hasse_rules;
    auto* cmd_hasse = app.add_subcommand("hasse", "covering diagram of a set of rules (DOT)");
    cmd_hasse->add_option("--rules-file", hasse_file)->check(CLI::ExistingFile);
    cmd_hasse->add_option("--rule", hasse_rules, "rule text (repeatable)");
    cmd_hasse->add_option("--max-levels", opt_levels, "sweep budget: encoding levels");
    cmd_hasse->add_option("--max-count", opt_count, "sweep budget: per-sign count");
    cmd_hasse->callback([&] {
        std::vector<RuleExpr> rules;
        if (!hasse_file.empty()) rules = read_rules_file(hasse_file);
        for (const auto& t : hasse_rules) rules.push_back(parse_rule(t));
        if (rules.empty())
            throw CLI::RequiredError("hasse: --rules-file or at least one --rule");
        HasseGraph g = build_hasse(rules, budget());
        if (json_out) {
            json edges = json::array(), und = json::array();
            for (const auto& [lo, hi] : g.edges) edges.push_back({lo, hi});
            for (const auto& [i, j] : g.undecided) und.push_back({i, j});
            std::cout << json{{"nodes", g.nodes}, {"edges", edges}, {"undecided", und}}.dump()
                      << "\n";
        } else {
            std::cout << hasse_dot(g);
        }
    });

    // ---- oracle ----
    auto* cmd_oracle = app.add_subcommand("oracle", "brute-force ground truth");
    cmd_oracle->require_subcommand(1);
    std::string ob_seq;
    auto* cmd_brack = cmd_oracle->add_subcommand("bracketings", "every achievable value");
    cmd_brack->add_option("--seq", ob_seq)->required();
    cmd_brack->callback([&] {
        std::set<int> vals = achievable_values(parse_sequence(ob_seq));
        if (json_out) {
            std::cout << json{{"achievable", std::vector<int>(vals.begin(), vals.end())}}.dump()
                      << "\n";
        } else {
            bool first = true;
            for (int v : vals) {
                if (!first) std::cout << ' ';
                std::cout << v;
                first = false;
            }
            std::cout << "\n";
        }
    });
    std::string oc_seq, oc_file;
    auto* cmd_check = cmd_oracle->add_subcommand("check", "check rules against all bracketings");
    cmd_check->add_option("--seq", oc_seq)->required();
    cmd_check->add_option("--rules-file", oc_file)->required()->check(CLI::ExistingFile);
    cmd_check->callback([&] {
        OracleReport rep =
            check_rules_against_bracketings(parse_sequence(oc_seq), read_rules_file(oc_file));
        if (json_out) {
            std::cout << json{{"pass", rep.pass},
                              {"achievable",
                               std::vector<int>(rep.achievable.begin(), rep.achievable.end())},
                              {"ruleValues", rep.rule_values},
                              {"failures", rep.failures}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "achievable:";
            for (int v : rep.achievable) std::cout << ' ' << v;
            std::cout << "\nrule values:";
            for (int v : rep.rule_values) std::cout << ' ' << v;
            std::cout << "\nresult: " << (rep.pass ? "pass" : "fail") << "\n";
            for (const std::string& f : rep.failures) std::cout << "failure: " << f << "\n";
        }
        rc = rep.pass ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const symmax::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const NotWellFormed& e) {
        std::cerr << "not well formed: " << e.what() << "\n";
        return 3;
    } catch (const NotMadeAssociative& e) {
        std::cerr << "not well formed on this input: " << e.what() << "\n";
        return 3;
    } catch (const NotAssociative& e) {
        std::cerr << "not associative: " << e.what() << "\n";
        return 3;
    } catch (const symmax::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return rc;
}
