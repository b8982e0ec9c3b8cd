#include <charconv>
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

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

using json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

ebn::EDag load_graph(const std::string& path) { return ebn::parse_edg(ebn::read_file(path)); }
ebn::ETree load_tree(const std::string& path) { return ebn::ETree(load_graph(path)); }
ebn::JointTable load_table(const std::string& path) { return ebn::parse_jpt(ebn::read_file(path)); }

// Document outputs go to -o when given, else stdout.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        ebn::write_file(out_path, content);
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"embedded Bayesian networks: m-separation, tree bases, recovery"};
    app.require_subcommand(1);

    struct {
        std::string format = "text";
        std::string graph, table, stmt, out, target, second;
        std::string kind = "bt";
        std::string axioms = "semi-graphoid";
        double tol = 1e-9;
        std::uint64_t seed = 0;
        int domain = 2;
        int latent_domain = 2;
        int k = 1;
        std::uint64_t limit = 0;
        bool all = false;
        bool trace = false;
    } o;
    int rc = 0;

    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    auto js = [&]() { return o.format == "json"; };

    auto* msep = app.add_subcommand("msep", "test whether a statement m-separates in a graph");
    msep->fallthrough();
    msep->add_option("graph", o.graph, "graph file (.edg)")->required();
    msep->add_option("statement", o.stmt, "statement, e.g. 'I(a,b ; c | d)'")->required();
    msep->callback([&] {
        ebn::EDag g = load_graph(o.graph);
        ebn::Statement s = ebn::parse_statement(o.stmt, g.universe());
        bool sep = ebn::m_separated(g, s);
        if (js())
            print_json({{"command", "msep"},
                        {"statement", ebn::format_statement(s, g.universe())},
                        {"separated", sep}});
        else
            std::cout << (sep ? "SEPARATED" : "CONNECTED") << "\n";
        rc = sep ? 0 : 1;
    });

    auto* ci = app.add_subcommand("ci", "test a conditional independence in a joint table");
    ci->fallthrough();
    ci->add_option("table", o.table, "table file (.jpt)")->required();
    ci->add_option("statement", o.stmt, "statement")->required();
    ci->add_option("--tol", o.tol, "residual tolerance")->capture_default_str();
    ci->callback([&] {
        ebn::JointTable p = load_table(o.table);
        ebn::Statement s = ebn::parse_statement(o.stmt, p.universe());
        ebn::CiResult r = ebn::ci_holds(p, s, o.tol);
        if (js())
            print_json({{"command", "ci"},
                        {"statement", ebn::format_statement(s, p.universe())},
                        {"holds", r.holds},
                        {"max_residual", r.max_residual},
                        {"tol", o.tol}});
        else
            std::cout << (r.holds ? "HOLDS" : "FAILS")
                      << " max_residual=" << fmt_double(r.max_residual) << "\n";
        rc = r.holds ? 0 : 1;
    });

    auto* imap = app.add_subcommand("imap", "check that a tree's basis holds in a table");
    imap->fallthrough();
    imap->add_option("tree", o.graph, "tree file (.edg)")->required();
    imap->add_option("table", o.table, "table file (.jpt)")->required();
    imap->add_option("--tol", o.tol, "residual tolerance")->capture_default_str();
    imap->add_flag("--all", o.all, "report every failing basis statement");
    imap->callback([&] {
        ebn::ETree t = load_tree(o.graph);
        ebn::JointTable p = load_table(o.table);
        ebn::ImapVerdict v = ebn::verify_etree_imap(t, p, o.tol, o.all);
        if (js()) {
            json j{{"command", "imap"}, {"imap", v.imap}, {"tests", v.tests_run}};
            if (v.witness) {
                j["witness"] = ebn::format_statement(*v.witness, t.universe());
                j["witness_residual"] = v.witness_residual;
            }
            if (o.all) {
                json fails = json::array();
                for (const auto& [s, r] : v.failures)
                    fails.push_back({{"statement", ebn::format_statement(s, t.universe())},
                                     {"residual", r}});
                j["failures"] = fails;
            }
            print_json(j);
        } else if (v.imap) {
            std::cout << "IMAP tests=" << v.tests_run << "\n";
        } else {
            std::cout << "NOT_IMAP witness=" << ebn::format_statement(*v.witness, t.universe())
                      << " residual=" << fmt_double(v.witness_residual)
                      << " tests=" << v.tests_run << "\n";
            for (const auto& [s, r] : v.failures)
                std::cout << "FAIL " << ebn::format_statement(s, t.universe())
                          << " residual=" << fmt_double(r) << "\n";
        }
        rc = v.imap ? 0 : 1;
    });

    auto* basis = app.add_subcommand("basis", "print a probabilistic basis of a tree");
    basis->fallthrough();
    basis->add_option("tree", o.graph, "tree file (.edg)")->required();
    basis->add_option("--kind", o.kind, "bt (conditional) or bs (sigma + marginal)")
        ->check(CLI::IsMember({"bt", "bs"}))
        ->capture_default_str();
    basis->callback([&] {
        ebn::ETree t = load_tree(o.graph);
        ebn::TreeBasis b = o.kind == "bt" ? ebn::build_bt(t) : ebn::build_bs(t);
        const ebn::Universe& u = t.universe();
        if (js()) {
            json entries = json::array();
            for (const ebn::BasisEntry& e : b.entries())
                entries.push_back({{"statement", ebn::format_statement(e.stmt, u)},
                                   {"vertex", u.name(e.vertex)},
                                   {"neighbor", u.name(e.neighbor)},
                                   {"kind", e.kind == ebn::BasisKind::Sigma ? "sigma" : "gamma"}});
            print_json({{"command", "basis"},
                        {"kind", o.kind},
                        {"count", b.entries().size()},
                        {"entries", entries}});
        } else {
            for (const ebn::BasisEntry& e : b.entries())
                std::cout << ebn::format_statement(e.stmt, u) << "\n";
        }
    });

    auto* recover = app.add_subcommand("recover", "recover the unique tree behind a table");
    recover->fallthrough();
    recover->add_option("table", o.table, "table file (.jpt)")->required();
    recover->add_option("--tol", o.tol, "residual tolerance")->capture_default_str();
    recover->add_option("-o,--output", o.out, "write the recovered tree here");
    recover->callback([&] {
        ebn::JointTable p = load_table(o.table);
        ebn::RecoveryOutcome out = ebn::recover(p, o.tol);
        if (out.ok()) {
            std::string edg = ebn::format_edg(out.tree->graph());
            if (js())
                print_json({{"command", "recover"},
                            {"ok", true},
                            {"tree", edg},
                            {"ci_queries", out.queries.size()}});
            else
                emit(o.out, edg);
        } else {
            const ebn::RecoveryFailure& f = *out.failure;
            if (js())
                print_json({{"command", "recover"},
                            {"ok", false},
                            {"stage", ebn::recovery_stage_name(f.stage)},
                            {"detail", f.detail},
                            {"ci_queries", out.queries.size()}});
            else
                std::cout << "FAIL stage=" << ebn::recovery_stage_name(f.stage) << " "
                          << f.detail << "\n";
            rc = 2;
        }
    });

    auto* sample = app.add_subcommand("sample-tree", "sample a distribution the tree represents");
    sample->fallthrough();
    sample->add_option("tree", o.graph, "tree file (.edg)")->required();
    sample->add_option("-o,--output", o.out, "write the table here");
    sample->add_option("--seed", o.seed, "rng seed")->envname("EBN_SEED")->capture_default_str();
    sample->add_option("--domain", o.domain, "observable domain size")->capture_default_str();
    sample->add_option("--latent-domain", o.latent_domain, "latent domain size")
        ->capture_default_str();
    sample->callback([&] {
        ebn::ETree t = load_tree(o.graph);
        ebn::SamplerConfig cfg;
        cfg.seed = o.seed;
        cfg.observable_domain = o.domain;
        cfg.latent_domain = o.latent_domain;
        ebn::JointTable p = ebn::sample_from_etree(t, cfg);
        std::string jpt = ebn::format_jpt(p);
        if (js())
            print_json({{"command", "sample-tree"},
                        {"seed", o.seed},
                        {"rows", p.rows()},
                        {"content", jpt}});
        else
            emit(o.out, jpt);
    });

    auto* gk = app.add_subcommand("gk", "write the k-th hardness family graph");
    gk->fallthrough();
    gk->add_option("k", o.k, "family index, k >= 1")->required();
    gk->add_option("-o,--output", o.out, "write the graph here");
    gk->callback([&] {
        ebn::GkInstance inst = ebn::build_gk(o.k);
        std::string edg = ebn::format_edg(inst.graph);
        if (js())
            print_json({{"command", "gk"}, {"k", o.k}, {"content", edg}});
        else
            emit(o.out, edg);
    });

    auto* gkv = app.add_subcommand("gk-verify", "check the hardness family construction");
    gkv->fallthrough();
    gkv->add_option("k", o.k, "family index, k >= 1")->required();
    gkv->callback([&] {
        ebn::HardnessReport r = ebn::verify_hardness(o.k);
        auto status_name = [](ebn::CheckStatus s) {
            switch (s) {
            case ebn::CheckStatus::Pass: return "PASS";
            case ebn::CheckStatus::Fail: return "FAIL";
            case ebn::CheckStatus::Skipped: return "SKIPPED";
            }
            return "?";
        };
        if (js()) {
            json checks = json::array();
            for (const ebn::HardnessCheck& c : r.checks)
                checks.push_back(
                    {{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
            print_json({{"command", "gk-verify"},
                        {"k", o.k},
                        {"all_passed", r.all_passed()},
                        {"checks", checks}});
        } else {
            for (const ebn::HardnessCheck& c : r.checks)
                std::cout << c.name << ": " << status_name(c.status) << " (" << c.detail << ")\n";
            std::cout << (r.all_passed() ? "ALL PASS" : "FAIL") << "\n";
        }
        rc = r.all_passed() ? 0 : 2;
    });

    auto* clos = app.add_subcommand("closure", "close a statement file under a rule system");
    clos->fallthrough();
    clos->add_option("statements", o.table, "statement file (.ind)")->required();
    clos->add_option("--axioms", o.axioms, "semi-graphoid, positive, marginal or sdw")
        ->check(CLI::IsMember({"semi-graphoid", "semigraphoid", "positive", "marginal", "sdw"}))
        ->capture_default_str();
    clos->add_option("--limit", o.limit, "statement budget");
    clos->callback([&] {
        ebn::StatementFile f = ebn::parse_statements(ebn::read_file(o.table));
        ebn::StatementSet in(f.statements);
        ebn::ClosureOptions opt;
        if (o.limit > 0) opt.budget = o.limit;
        ebn::AxiomSet ax = *ebn::axiom_set_from_name(o.axioms);
        ebn::ClosureResult res = ebn::closure(in, ax, f.universe.size(), opt);
        ebn::StatementFile out{f.universe, res.statements().to_vector()};
        if (js()) {
            json stmts = json::array();
            for (const ebn::Statement& s : res.statements())
                stmts.push_back(ebn::format_statement(s, f.universe));
            print_json({{"command", "closure"},
                        {"axioms", ebn::axiom_set_name(ax)},
                        {"size", res.statements().size()},
                        {"statements", stmts}});
        } else {
            std::cout << ebn::format_statements(out);
        }
    });

    auto* derive = app.add_subcommand("derive", "test whether the statements derive a target");
    derive->fallthrough();
    derive->add_option("statements", o.table, "statement file (.ind)")->required();
    derive->add_option("target", o.target, "target statement")->required();
    derive->add_option("--axioms", o.axioms, "semi-graphoid, positive, marginal or sdw")
        ->check(CLI::IsMember({"semi-graphoid", "semigraphoid", "positive", "marginal", "sdw"}))
        ->capture_default_str();
    derive->add_option("--limit", o.limit, "statement budget");
    derive->add_flag("--trace", o.trace, "print a derivation");
    derive->callback([&] {
        ebn::StatementFile f = ebn::parse_statements(ebn::read_file(o.table));
        ebn::StatementSet in(f.statements);
        ebn::Statement target = ebn::parse_statement(o.target, f.universe);
        ebn::ClosureOptions opt;
        if (o.limit > 0) opt.budget = o.limit;
        ebn::AxiomSet ax = *ebn::axiom_set_from_name(o.axioms);
        std::vector<ebn::DerivationStep> steps;
        bool derivable;
        if (o.trace) {
            steps = ebn::derivation(in, target, ax, f.universe.size(), opt);
            derivable = !steps.empty();
        } else {
            derivable = ebn::derives(in, target, ax, f.universe.size(), opt);
        }
        if (js()) {
            json trace = json::array();
            for (const ebn::DerivationStep& s : steps) {
                json premises = json::array();
                if (s.premise1 >= 0) premises.push_back(s.premise1);
                if (s.premise2 >= 0) premises.push_back(s.premise2);
                trace.push_back({{"statement", ebn::format_statement(s.stmt, f.universe)},
                                 {"rule", ebn::rule_name(s.rule)},
                                 {"premises", premises}});
            }
            json j{{"command", "derive"},
                   {"target", ebn::format_statement(target, f.universe)},
                   {"derivable", derivable}};
            if (o.trace) j["trace"] = trace;
            print_json(j);
        } else {
            std::cout << (derivable ? "DERIVABLE" : "NOT DERIVABLE") << "\n";
            for (std::size_t i = 0; i < steps.size(); ++i) {
                const ebn::DerivationStep& s = steps[i];
                std::cout << "  " << i << ": " << ebn::format_statement(s.stmt, f.universe)
                          << "  [" << ebn::rule_name(s.rule);
                if (s.premise1 >= 0) std::cout << " " << s.premise1;
                if (s.premise2 >= 0) std::cout << " " << s.premise2;
                std::cout << "]\n";
            }
        }
        rc = derivable ? 0 : 1;
    });

    auto* iso = app.add_subcommand("iso", "test whether two trees encode the same model");
    iso->fallthrough();
    iso->add_option("first", o.graph, "tree file (.edg)")->required();
    iso->add_option("second", o.second, "tree file (.edg)")->required();
    iso->callback([&] {
        ebn::ETree a = load_tree(o.graph);
        ebn::ETree b = load_tree(o.second);
        bool same = ebn::etree_isomorphic(a, b);
        if (js())
            print_json({{"command", "iso"}, {"isomorphic", same}});
        else
            std::cout << (same ? "ISOMORPHIC" : "NOT ISOMORPHIC") << "\n";
        rc = same ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const ebn::Error& e) {
        std::cerr << e.what() << "\n";
        bool algorithmic = e.code() == ebn::ErrorCode::RetriesExhausted ||
                           e.code() == ebn::ErrorCode::BudgetExceeded;
        return algorithmic ? 2 : 3;
    }
    return rc;
}
