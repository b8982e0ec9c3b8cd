// Python face of the library.  Everything goes through the text formats, so
// the binding stays a thin translation layer: graphs are .edg strings,
// tables .jpt strings, statements the usual I(x ; y | z) syntax.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ebn/error.hpp"
#include "ebn/graph.hpp"
#include "ebn/graphoid.hpp"
#include "ebn/hardness.hpp"
#include "ebn/io.hpp"
#include "ebn/joint_table.hpp"
#include "ebn/recovery.hpp"
#include "ebn/sampler.hpp"
#include "ebn/separation.hpp"
#include "ebn/tree_basis.hpp"

namespace py = pybind11;

namespace {

std::vector<std::string> render(const ebn::StatementSet& set, const ebn::Universe& u) {
    std::vector<std::string> out;
    out.reserve(set.size());
    for (const ebn::Statement& s : set) out.push_back(ebn::format_statement(s, u));
    return out;
}

ebn::AxiomSet axioms_or_throw(const std::string& name) {
    auto ax = ebn::axiom_set_from_name(name);
    if (!ax)
        throw ebn::Error(ebn::ErrorCode::InvalidStatement,
                         "unknown axiom set '" + name + "'");
    return *ax;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "embedded Bayesian networks: m-separation, tree bases, recovery";

    py::register_exception<ebn::Error>(m, "Error");

    m.def(
        "m_separated",
        [](const std::string& graph, const std::string& stmt) {
            ebn::EDag g = ebn::parse_edg(graph);
            return ebn::m_separated(g, ebn::parse_statement(stmt, g.universe()));
        },
        py::arg("graph"), py::arg("statement"),
        "True iff the statement m-separates in the graph (.edg text).");

    m.def(
        "enumerate_model",
        [](const std::string& graph, int limit) {
            ebn::EDag g = ebn::parse_edg(graph);
            return render(ebn::enumerate_model(g, limit), g.universe());
        },
        py::arg("graph"), py::arg("limit") = 7,
        "Every statement the graph m-separates, in canonical order.");

    m.def(
        "ci",
        [](const std::string& table, const std::string& stmt, double tol) {
            ebn::JointTable p = ebn::parse_jpt(table);
            ebn::CiResult r = ebn::ci_holds(p, ebn::parse_statement(stmt, p.universe()), tol);
            return py::make_tuple(r.holds, r.max_residual);
        },
        py::arg("table"), py::arg("statement"), py::arg("tol") = 1e-9,
        "(holds, max_residual) for a conditional independence in a .jpt table.");

    m.def(
        "conditional_basis",
        [](const std::string& tree) {
            ebn::ETree t{ebn::parse_edg(tree)};
            return render(ebn::build_bt(t).statements(), t.universe());
        },
        py::arg("tree"));

    m.def(
        "marginal_basis",
        [](const std::string& tree) {
            ebn::ETree t{ebn::parse_edg(tree)};
            return render(ebn::build_bs(t).statements(), t.universe());
        },
        py::arg("tree"));

    m.def(
        "verify_imap",
        [](const std::string& tree, const std::string& table, double tol) {
            ebn::ETree t{ebn::parse_edg(tree)};
            ebn::JointTable p = ebn::parse_jpt(table);
            ebn::ImapVerdict v = ebn::verify_etree_imap(t, p, tol);
            py::dict d;
            d["imap"] = v.imap;
            d["tests"] = v.tests_run;
            d["witness"] = v.witness
                               ? py::object(py::str(ebn::format_statement(*v.witness, t.universe())))
                               : py::object(py::none());
            d["witness_residual"] = v.witness_residual;
            return d;
        },
        py::arg("tree"), py::arg("table"), py::arg("tol") = 1e-9);

    m.def(
        "recover",
        [](const std::string& table, double tol) {
            ebn::JointTable p = ebn::parse_jpt(table);
            ebn::RecoveryOutcome out = ebn::recover(p, tol);
            py::dict d;
            d["ok"] = out.ok();
            d["ci_queries"] = out.queries.size();
            if (out.ok()) {
                d["tree"] = ebn::format_edg(out.tree->graph());
            } else {
                d["stage"] = ebn::recovery_stage_name(out.failure->stage);
                d["detail"] = out.failure->detail;
            }
            return d;
        },
        py::arg("table"), py::arg("tol") = 1e-9);

    m.def(
        "sample_tree",
        [](const std::string& tree, std::uint64_t seed, int domain, int latent_domain) {
            ebn::ETree t{ebn::parse_edg(tree)};
            ebn::SamplerConfig cfg;
            cfg.seed = seed;
            cfg.observable_domain = domain;
            cfg.latent_domain = latent_domain;
            return ebn::format_jpt(ebn::sample_from_etree(t, cfg));
        },
        py::arg("tree"), py::arg("seed") = 0, py::arg("domain") = 2,
        py::arg("latent_domain") = 2,
        "A strictly positive .jpt table the tree represents.");

    m.def(
        "isomorphic",
        [](const std::string& first, const std::string& second) {
            return ebn::etree_isomorphic(ebn::ETree{ebn::parse_edg(first)},
                                         ebn::ETree{ebn::parse_edg(second)});
        },
        py::arg("first"), py::arg("second"));

    m.def(
        "gk_graph",
        [](int k) { return ebn::format_edg(ebn::build_gk(k).graph); },
        py::arg("k"));

    m.def(
        "t_set",
        [](int k) {
            ebn::GkInstance inst = ebn::build_gk(k);
            return render(ebn::t_set(k), inst.graph.universe());
        },
        py::arg("k"));

    m.def(
        "verify_gk",
        [](int k) {
            ebn::HardnessReport r = ebn::verify_hardness(k);
            py::list checks;
            for (const ebn::HardnessCheck& c : r.checks) {
                py::dict d;
                d["name"] = c.name;
                d["status"] = c.status == ebn::CheckStatus::Pass      ? "PASS"
                              : c.status == ebn::CheckStatus::Fail    ? "FAIL"
                                                                      : "SKIPPED";
                d["detail"] = c.detail;
                checks.append(d);
            }
            py::dict d;
            d["k"] = r.k;
            d["all_passed"] = r.all_passed();
            d["checks"] = checks;
            return d;
        },
        py::arg("k"));

    m.def(
        "closure",
        [](const std::string& statements, const std::string& axioms, std::size_t budget) {
            ebn::StatementFile f = ebn::parse_statements(statements);
            ebn::ClosureOptions opt;
            opt.budget = budget;
            ebn::ClosureResult r = ebn::closure(ebn::StatementSet(f.statements),
                                                axioms_or_throw(axioms), f.universe.size(), opt);
            return render(r.statements(), f.universe);
        },
        py::arg("statements"), py::arg("axioms") = "semi-graphoid",
        py::arg("budget") = std::size_t{2'000'000},
        "Close a .ind statement file under a rule system.");

    m.def(
        "derives",
        [](const std::string& statements, const std::string& target, const std::string& axioms,
           std::size_t budget) {
            ebn::StatementFile f = ebn::parse_statements(statements);
            ebn::ClosureOptions opt;
            opt.budget = budget;
            return ebn::derives(ebn::StatementSet(f.statements),
                                ebn::parse_statement(target, f.universe),
                                axioms_or_throw(axioms), f.universe.size(), opt);
        },
        py::arg("statements"), py::arg("target"), py::arg("axioms") = "semi-graphoid",
        py::arg("budget") = std::size_t{2'000'000});

    m.def(
        "canonical_graph",
        [](const std::string& text) { return ebn::format_edg(ebn::parse_edg(text)); },
        py::arg("text"));

    m.def(
        "canonical_table",
        [](const std::string& text) { return ebn::format_jpt(ebn::parse_jpt(text)); },
        py::arg("text"));

    m.def(
        "canonical_statements",
        [](const std::string& text) {
            return ebn::format_statements(ebn::parse_statements(text));
        },
        py::arg("text"));
}
