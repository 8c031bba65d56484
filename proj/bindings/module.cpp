#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "symmax/canonical.hpp"
#include "symmax/core.hpp"
#include "symmax/engine.hpp"
#include "symmax/oracle.hpp"
#include "symmax/order.hpp"
#include "symmax/rule.hpp"

namespace py = pybind11;
using namespace symmax;

namespace {

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

py::dict verdict_dict(const OrderVerdict& v) {
    py::dict d;
    d["relation"] = to_string(v.relation);
    d["method"] = v.method;
    py::list ws;
    for (const Witness& w : v.witnesses) {
        py::dict wd;
        wd["sequence"] = to_string(w.sequence);
        wd["left"] = profile_text(w.left);
        wd["right"] = profile_text(w.right);
        ws.append(wd);
    }
    d["witnesses"] = ws;
    if (v.budget) d["budget"] = py::make_tuple(v.budget->max_levels, v.budget->max_count);
    if (!v.surviving.empty()) d["surviving"] = v.surviving;
    return d;
}

R123Labels labels_of(const std::string& rule) {
    auto t = to_labels(factorize(parse_rule(rule)));
    if (!t)
        throw PreconditionFailed(
            "rule uses below-top letters; meet/join/interval operate on the label "
            "sublattice");
    return *t;
}

}  // namespace

PYBIND11_MODULE(_symmax, m) {
    m.doc() = "nonassociative symmetric-maximum calculus";

    py::register_exception<symmax::ParseError>(m, "ParseError");
    auto not_well_formed = py::register_exception<NotWellFormed>(m, "NotWellFormed");
    // A rule that stops before reaching a value on some input: grouped under
    // NotWellFormed for callers that only care whether evaluation succeeded.
    py::register_exception<NotMadeAssociative>(m, "NotMadeAssociative",
                                               not_well_formed.ptr());

    m.def("symmax", &symmax::symmax, py::arg("a"), py::arg("b"),
          "The binary operation: larger magnitude wins, exact opposites cancel to 0.");

    m.def(
        "evaluate",
        [](const std::string& rule, const std::string& seq) {
            return evaluate(parse_rule(rule), parse_sequence(seq));
        },
        py::arg("rule"), py::arg("seq"),
        "Value of a comma-separated sequence under a rule word.");

    m.def(
        "encode", [](const std::string& seq) { return to_string(symmax::encode(parse_sequence(seq))); },
        py::arg("seq"), "Level encoding of a sequence, as text.");

    m.def(
        "canonical",
        [](const std::string& rule) { return canonical_print(factorize(parse_rule(rule))); },
        py::arg("rule"), "Canonical form of a well-formed rule.");

    m.def(
        "well_formed", [](const std::string& rule) { return well_formed(parse_rule(rule)); },
        py::arg("rule"), "Does the rule reduce every sequence to a value?");

    m.def(
        "equivalent",
        [](const std::string& a, const std::string& b) {
            return equivalent(parse_rule(a), parse_rule(b));
        },
        py::arg("rule1"), py::arg("rule2"));

    m.def(
        "compare",
        [](const std::string& a, const std::string& b, int max_levels, int max_count) {
            return verdict_dict(
                compare(parse_rule(a), parse_rule(b), Budget{max_levels, max_count}));
        },
        py::arg("rule1"), py::arg("rule2"), py::arg("max_levels") = 6,
        py::arg("max_count") = 3,
        "Order verdict between two rules: relation, method, witnesses.");

    m.def(
        "kernel_compare",
        [](const std::string& a, const std::string& b, int max_levels, int max_count) {
            return verdict_dict(
                kernel_compare(parse_rule(a), parse_rule(b), Budget{max_levels, max_count}));
        },
        py::arg("rule1"), py::arg("rule2"), py::arg("max_levels") = 6,
        py::arg("max_count") = 3);

    m.def(
        "classify", [](const std::string& rule) { return to_string(classify(parse_rule(rule))); },
        py::arg("rule"), "least / atom / maximal / none.");

    m.def(
        "achievable",
        [](const std::string& seq) {
            std::set<int> s = achievable_values(parse_sequence(seq));
            return std::vector<int>(s.begin(), s.end());
        },
        py::arg("seq"), "Every value reachable by some ordering and bracketing.");

    m.def(
        "meet",
        [](const std::string& a, const std::string& b) {
            return canonical_print(from_labels(meet123(labels_of(a), labels_of(b))));
        },
        py::arg("rule1"), py::arg("rule2"));

    m.def(
        "join",
        [](const std::string& a, const std::string& b) {
            return canonical_print(from_labels(join123(labels_of(a), labels_of(b))));
        },
        py::arg("rule1"), py::arg("rule2"));

    m.def(
        "interval",
        [](const std::string& rule) {
            std::vector<std::string> out;
            for (const R123Labels& t : interval123(labels_of(rule)))
                out.push_back(canonical_print(from_labels(t)));
            return out;
        },
        py::arg("rule"), "All rules weakly below a finite-support label rule.");

    m.def(
        "extraction_rule",
        [](const std::string& psi, int k, int delta) {
            return print_rule(make_extraction_rule(parse_psi(psi), k, delta));
        },
        py::arg("encoding"), py::arg("k"), py::arg("delta"),
        "Rule word reducing any same-shape active encoding to delta * n_k.");

    m.def("registry", [] {
        std::vector<std::string> names;
        for (const auto& [name, expr] : registry()) names.push_back(name);
        return names;
    });
}
