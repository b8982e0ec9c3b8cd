#include "ebn/hardness.hpp"

#include <cstdint>
#include <string>

#include "ebn/error.hpp"
#include "ebn/graphoid.hpp"
#include "ebn/io.hpp"
#include "ebn/separation.hpp"

namespace ebn {

namespace {

void check_k(int k) {
    if (k < 1)
        throw Error(ErrorCode::InvalidK, "k must be at least 1, got " + std::to_string(k));
    if (2 * (k + 1) > 64)
        throw Error(ErrorCode::UniverseTooLarge,
                    "k = " + std::to_string(k) + " needs " + std::to_string(2 * (k + 1)) +
                        " vertices, more than the 64 supported");
}

} // namespace

GkInstance build_gk(int k) {
    check_k(k);

    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(2 * (k + 1)));
    for (int i = 0; i <= k; ++i) names.push_back("c" + std::to_string(i));
    for (int i = 0; i <= k; ++i) names.push_back("d" + std::to_string(i));

    auto c = [](int i) { return static_cast<VarId>(i); };
    auto d = [k](int i) { return static_cast<VarId>(k + 1 + i); };

    std::vector<std::pair<VarId, VarId>> bidirected;
    for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
            bidirected.push_back({c(i), c(j)});
            bidirected.push_back({d(i), d(j)});
        }
    for (int i = 1; i <= k; ++i) bidirected.push_back({c(i), d(i)});

    return {k, validate_edag(Universe(std::move(names)), {}, std::move(bidirected))};
}

StatementSet t_set(int k) {
    check_k(k);

    const VarId d0 = k + 1;
    StatementSet out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        VarSet x = VarSet::single(0);
        VarSet y = VarSet::single(d0);
        for (int i = 1; i <= k; ++i) {
            if ((mask >> (i - 1)) & 1)
                x.insert(i); // c_i
            else
                y.insert(d0 + i); // d_i
        }
        out.insert(Statement::marginal(x, y));
    }
    return out;
}

std::optional<std::pair<VarSet, VarSet>> theorem2_partition(const EDag& g, const Statement& s) {
    MSeparator sep(g);
    if (!sep.separated(s))
        throw Error(ErrorCode::StatementNotInModel,
                    "the statement does not m-separate in the graph");

    const auto zs = s.z.to_vector();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << zs.size()); ++mask) {
        VarSet zp;
        for (std::size_t j = 0; j < zs.size(); ++j)
            if ((mask >> j) & 1) zp.insert(zs[j]);
        VarSet zpp = s.z - zp;
        if (sep.separated(Statement::marginal(s.x | zp, s.y | zpp)))
            return std::make_pair(zp, zpp);
    }
    return std::nullopt;
}

bool HardnessReport::all_passed() const {
    for (const HardnessCheck& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

HardnessReport verify_hardness(int k) {
    constexpr int membership_limit = 8;
    constexpr int partition_limit = 2;
    constexpr int irredundancy_limit = 3;

    GkInstance gk = build_gk(k);
    const Universe& u = gk.graph.universe();
    StatementSet t = t_set(k);
    HardnessReport report{k, {}};

    {
        const std::size_t expected = std::size_t{1} << k;
        report.checks.push_back({"size",
                                 t.size() == expected ? CheckStatus::Pass : CheckStatus::Fail,
                                 std::to_string(t.size()) + " statements, expected " +
                                     std::to_string(expected)});
    }

    if (k <= membership_limit) {
        MSeparator sep(gk.graph);
        HardnessCheck check{"membership", CheckStatus::Pass,
                            "all " + std::to_string(t.size()) + " statements m-separate"};
        for (const Statement& s : t)
            if (!sep.separated(s)) {
                check.status = CheckStatus::Fail;
                check.detail = format_statement(s, u) + " does not m-separate";
                break;
            }
        report.checks.push_back(std::move(check));
    } else {
        report.checks.push_back({"membership", CheckStatus::Skipped,
                                 "skipped for k > " + std::to_string(membership_limit)});
    }

    if (k <= partition_limit) {
        StatementSet model = enumerate_model(gk.graph);
        HardnessCheck check{"partition", CheckStatus::Pass,
                            "all " + std::to_string(model.size()) +
                                " model statements admit a marginal split"};
        for (const Statement& s : model)
            if (!theorem2_partition(gk.graph, s)) {
                check.status = CheckStatus::Fail;
                check.detail = "no marginal split for " + format_statement(s, u);
                break;
            }
        report.checks.push_back(std::move(check));
    } else {
        report.checks.push_back({"partition", CheckStatus::Skipped,
                                 "skipped for k > " + std::to_string(partition_limit)});
    }

    if (k <= irredundancy_limit) {
        HardnessCheck check{"irredundancy", CheckStatus::Pass,
                            "no statement is derivable from the others"};
        for (const Statement& s : t) {
            StatementSet rest;
            for (const Statement& o : t) {
                if (o == s || o == s.symmetric()) continue;
                rest.insert(o);
                rest.insert(o.symmetric());
            }
            if (derives(rest, s, AxiomSet::Marginal, u.size())) {
                check.status = CheckStatus::Fail;
                check.detail = format_statement(s, u) + " is derivable from the others";
                break;
            }
        }
        report.checks.push_back(std::move(check));
    } else {
        report.checks.push_back({"irredundancy", CheckStatus::Skipped,
                                 "skipped for k > " + std::to_string(irredundancy_limit)});
    }

    return report;
}

} // namespace ebn
