#pragma once

#include <optional>
#include <vector>

#include "ebn/graph.hpp"
#include "ebn/joint_table.hpp"
#include "ebn/statement.hpp"

namespace ebn {

enum class BasisKind { Sigma, Gamma };

// One basis statement, with the vertex/neighbour it was generated from.
struct BasisEntry {
    Statement stmt;
    VarId vertex;
    VarId neighbor;
    BasisKind kind;
};

// A polynomially sized set of statements whose truth in a distribution is
// equivalent to the whole model membership question for the tree.
class TreeBasis {
public:
    explicit TreeBasis(std::vector<BasisEntry> entries);

    // Entries in canonical statement order, duplicates collapsed.
    const std::vector<BasisEntry>& entries() const { return entries_; }
    StatementSet statements() const;

    std::size_t membership_test_count() const { return entries_.size(); }

private:
    std::vector<BasisEntry> entries_;
};

// The conditional basis B_T.  For every vertex x with children s_i and
// remaining neighbours q_i:
//   sigma_i^x = I(S_i, {x}, U \ S_i \ {x})       for each child s_i,
//   gamma_i^x = I(Q_i, {}, U \ Desc(x) \ Q_i)    for each other neighbour q_i,
// where S_i / Q_i collect the vertices whose trail to x passes through the
// neighbour.  Statements with an empty component are skipped.
TreeBasis build_bt(const ETree& t);

// The sigma statements plus, per vertex, the marginal statements
// I(Q_i, {}, union of the other Q_j).
TreeBasis build_bs(const ETree& t);

struct ImapVerdict {
    bool imap;
    std::size_t tests_run;
    // First failing basis statement in canonical order (when !imap).
    std::optional<Statement> witness;
    double witness_residual = 0.0;
    // All failures, populated when collect_all is set.
    std::vector<std::pair<Statement, double>> failures;
};

// Runs ci_holds on every B_T statement.  The tree and table must agree on
// the universe (names, in order).
ImapVerdict verify_etree_imap(const ETree& t, const JointTable& p, double tol = 1e-9,
                              bool collect_all = false,
                              std::vector<CiQuery>* log = nullptr);

} // namespace ebn
