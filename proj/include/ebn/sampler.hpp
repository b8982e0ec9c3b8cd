#pragma once

#include <cstdint>
#include <random>

#include "ebn/graph.hpp"
#include "ebn/joint_table.hpp"

namespace ebn {

struct SamplerConfig {
    std::uint64_t seed = 0;
    int observable_domain = 2;
    int latent_domain = 2;
    // Conditional-table entries are clamped to at least this before
    // renormalisation, which keeps every joint entry strictly positive.
    double cpt_floor = 0.05;
    // Rejection margin: every pair joined by a sink-free trail must show a
    // marginal-dependence residual above this, so recovery has real signal.
    double wellrep_margin = 1e-3;
    int max_retries = 100;
    int max_observables = 12;
};

// Uniform double in [0, 1) from the raw engine output.  Used instead of
// std::uniform_real_distribution so streams are identical across standard
// libraries.
inline double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Engine for the (seed, retry) substream; std::seed_seq has a fully
// specified algorithm, so this is reproducible everywhere.
std::mt19937_64 substream(std::uint64_t seed, int retry);

// Random conditional tables on a pure dag, multiplied into the exact joint.
// No rejection, no latents.  Throws HasBidirectedEdge on mixed graphs.
JointTable sample_from_dag(const EDag& d, std::mt19937_64& rng,
                           const std::vector<int>& domains, double cpt_floor = 0.05);
JointTable sample_from_dag(const EDag& d, std::mt19937_64& rng, int domain = 2,
                           double cpt_floor = 0.05);

// Random distribution that the tree represents: parameterise the latent
// transform of t, marginalise the latents out, and reject until the result
// is strictly positive and every trek-joined pair of observables is
// marginally dependent with residual > wellrep_margin.  Deterministic for a
// given (cfg.seed, retry index).  Throws RetriesExhausted if max_retries
// rejections occur.
JointTable sample_from_etree(const ETree& t, const SamplerConfig& cfg = {});

} // namespace ebn
