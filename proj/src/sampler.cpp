#include "ebn/sampler.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "ebn/error.hpp"
#include "ebn/joint_table.hpp"

namespace ebn {

std::mt19937_64 substream(std::uint64_t seed, int retry) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(retry)};
    return std::mt19937_64(seq);
}

JointTable sample_from_dag(const EDag& d, std::mt19937_64& rng,
                           const std::vector<int>& domains, double cpt_floor) {
    if (!d.is_pure_dag())
        throw Error(ErrorCode::HasBidirectedEdge, "sampling needs a pure dag");
    if (domains.size() != static_cast<std::size_t>(d.size()))
        throw Error(ErrorCode::VariableMismatch, "one domain size per vertex required");
    const int n = d.size();
    for (int dom : domains) {
        if (dom < 2) throw Error(ErrorCode::BadTable, "domains must be >= 2");
        if (!(cpt_floor > 0.0) || cpt_floor >= 1.0 / dom)
            throw Error(ErrorCode::BadTable, "cpt_floor must sit in (0, 1/domain)");
    }

    auto dom_of = [&](VarId v) { return static_cast<std::size_t>(domains[static_cast<size_t>(v)]); };

    // One conditional table per vertex, indexed by (parent assignment, own
    // value).  Entries are uniform draws clamped to the floor, then
    // renormalised, so every conditional is bounded away from zero.
    std::vector<std::vector<double>> cpt(static_cast<size_t>(n));
    std::vector<std::vector<VarId>> parent_list(static_cast<size_t>(n));
    for (VarId v = 0; v < n; ++v) {
        parent_list[static_cast<size_t>(v)] = d.parents(v).to_vector();
        std::size_t contexts = 1;
        for (VarId parent : parent_list[static_cast<size_t>(v)]) contexts *= dom_of(parent);
        auto& table = cpt[static_cast<size_t>(v)];
        table.resize(contexts * dom_of(v));
        for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
            double total = 0.0;
            for (std::size_t val = 0; val < dom_of(v); ++val) {
                double draw = next_unit(rng);
                if (draw < cpt_floor) draw = cpt_floor;
                table[ctx * dom_of(v) + val] = draw;
                total += draw;
            }
            for (std::size_t val = 0; val < dom_of(v); ++val)
                table[ctx * dom_of(v) + val] /= total;
        }
    }

    std::size_t rows = 1;
    for (VarId v = 0; v < n; ++v) rows *= dom_of(v);
    std::vector<double> probs(rows);
    std::vector<int> assignment(static_cast<size_t>(n), 0);
    for (std::size_t row = 0; row < rows; ++row) {
        double prob = 1.0;
        for (VarId v = 0; v < n; ++v) {
            std::size_t ctx = 0;
            for (VarId parent : parent_list[static_cast<size_t>(v)])
                ctx = ctx * dom_of(parent) +
                      static_cast<std::size_t>(assignment[static_cast<size_t>(parent)]);
            prob *= cpt[static_cast<size_t>(v)][ctx * dom_of(v) +
                                                static_cast<std::size_t>(assignment[static_cast<size_t>(v)])];
        }
        probs[row] = prob;
        for (int i = n - 1; i >= 0; --i) {
            if (++assignment[static_cast<size_t>(i)] < domains[static_cast<size_t>(i)]) break;
            assignment[static_cast<size_t>(i)] = 0;
        }
    }

    std::vector<Variable> vars;
    vars.reserve(static_cast<size_t>(n));
    for (VarId v = 0; v < n; ++v)
        vars.push_back({d.universe().name(v), domains[static_cast<size_t>(v)]});
    return JointTable(std::move(vars), std::move(probs), 1e-6);
}

JointTable sample_from_dag(const EDag& d, std::mt19937_64& rng, int domain, double cpt_floor) {
    return sample_from_dag(d, rng, std::vector<int>(static_cast<size_t>(d.size()), domain),
                           cpt_floor);
}

namespace {

// Pairs of observables joined by a sink-free trail; exactly the pairs that
// must come out marginally dependent for recovery to see the skeleton.
std::vector<std::pair<VarId, VarId>> trek_pairs(const ETree& t) {
    std::vector<std::pair<VarId, VarId>> out;
    for (VarId a = 0; a < t.size(); ++a)
        for (VarId b = a + 1; b < t.size(); ++b)
            if (is_trek(t.graph(), t.unique_trail(a, b))) out.push_back({a, b});
    return out;
}

} // namespace

JointTable sample_from_etree(const ETree& t, const SamplerConfig& cfg) {
    const int n = t.size();
    if (n > cfg.max_observables)
        throw Error(ErrorCode::UniverseTooLarge,
                    std::to_string(n) + " observables exceed the sampler cap of " +
                        std::to_string(cfg.max_observables));

    const EDag expanded = latent_transform(t.graph());
    const auto pairs = trek_pairs(t);

    std::vector<int> domains(static_cast<size_t>(expanded.size()), cfg.latent_domain);
    for (int i = 0; i < n; ++i) domains[static_cast<size_t>(i)] = cfg.observable_domain;

    std::string last_reason = "no attempt made";
    for (int retry = 0; retry < cfg.max_retries; ++retry) {
        std::mt19937_64 rng = substream(cfg.seed, retry);
        JointTable full = sample_from_dag(expanded, rng, domains, cfg.cpt_floor);
        JointTable observed =
            expanded.size() == n ? full : marginal(full, VarSet::full(n));

        if (!is_strictly_positive(observed)) {
            last_reason = "zero mass cell";
            continue;
        }
        bool dependent = true;
        for (auto [a, b] : pairs) {
            CiResult r = ci_holds(observed,
                                  Statement::marginal(VarSet::single(a), VarSet::single(b)));
            if (r.max_residual <= cfg.wellrep_margin) {
                last_reason = "pair (" + t.universe().name(a) + "," + t.universe().name(b) +
                              ") nearly independent (residual " + std::to_string(r.max_residual) +
                              ")";
                dependent = false;
                break;
            }
        }
        if (dependent) return observed;
    }
    throw Error(ErrorCode::RetriesExhausted,
                std::to_string(cfg.max_retries) + " rejected draws; last: " + last_reason);
}

} // namespace ebn
