#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ebn/graph.hpp"
#include "ebn/statement.hpp"

namespace ebn {

// The stress family G_k: cliques of bidirected edges over C = {c0..ck} and
// D = {d0..dk} plus rungs c_i <-> d_i for i = 1..k.  Its model needs
// exponentially many statements to generate under the marginal rules, which
// is what verify_hardness demonstrates empirically.
struct GkInstance {
    int k;
    EDag graph;
};

// k >= 1 (else InvalidK).  Universe order: c0..ck, d0..dk.
GkInstance build_gk(int k);

// The 2^k marginal statements I({c0} u C', {}, {d0} u D') where, for each
// i in 1..k, exactly one of c_i, d_i joins its side.  Enumerated by subset
// mask over {1..k} (bit set: c_i joins X), so the order is canonical.
StatementSet t_set(int k);

// For sigma = I(X,Z,Y) in M(g), finds the first partition (Z', Z'') of Z in
// canonical subset order with I(X u Z', {}, Y u Z'') in M(g).  Throws
// StatementNotInModel if sigma is not in the model; returns nullopt when no
// partition works (not expected for E-dag models).
std::optional<std::pair<VarSet, VarSet>> theorem2_partition(const EDag& g, const Statement& s);

enum class CheckStatus { Pass, Fail, Skipped };

struct HardnessCheck {
    std::string name;
    CheckStatus status;
    std::string detail;
};

struct HardnessReport {
    int k;
    std::vector<HardnessCheck> checks;

    bool all_passed() const;
};

// Empirical evidence that t_set(k) is a correct and irredundant generator:
//   size:         |t_set(k)| == 2^k
//   membership:   every member m-separates in G_k           (k <= 8)
//   partition:    theorem2_partition succeeds on all of
//                 enumerate_model(G_k)                      (k <= 2)
//   irredundancy: no member is derivable from the others
//                 (and their symmetries) under MARGINAL     (k <= 3)
// Checks above their limit are reported as Skipped.
HardnessReport verify_hardness(int k);

} // namespace ebn
