#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ebn/graph.hpp"
#include "ebn/joint_table.hpp"
#include "ebn/statement.hpp"
#include "ebn/tree_basis.hpp"

namespace ebn {

// Undirected graph over a universe; the intermediate object of recovery.
struct Skeleton {
    Universe universe;
    std::vector<VarSet> adj;

    int size() const { return universe.size(); }
    bool is_tree() const; // connected with n-1 edges
    std::vector<std::pair<VarId, VarId>> edges() const; // sorted, a < b
};

// Skeleton plus the length-2 chains (a, b, c) that must receive a sink at b.
struct SinkConstraint {
    Skeleton skeleton;
    std::vector<std::array<VarId, 3>> required; // a < c, both adjacent to b
};

// Drops the edge a - b from the complete graph when either
// I({a}, U \ {a,b}, {b}) or I({a}, {}, {b}) holds in p.  Requires a
// strictly positive table (else NotPositive).
Skeleton build_skeleton(const JointTable& p, double tol = 1e-9,
                        std::vector<CiQuery>* log = nullptr);

// Orients the tree skeleton so that exactly the required chains have sinks.
// Edge ends are labelled away / not-away: an edge may not point away from
// both ends, required chains force both ends at the middle vertex to
// not-away, and every other chain needs at least one away end.  Free ends
// are completed canonically: remaining components become out-trees rooted at
// their lowest-named vertex.  Throws OrientationConflict (witness chain in
// the message) when the labels are unsatisfiable.
ETree orient(const SinkConstraint& c);

struct WellRepCheck {
    bool ok;
    std::optional<std::pair<VarId, VarId>> witness_pair; // first trek pair that is marginally independent
    double witness_residual = 0.0;
};

// Every pair joined by a sink-free trail in t must be marginally dependent
// in p (at most n(n-1)/2 CI tests).
WellRepCheck check_well_represented(const ETree& t, const JointTable& p, double tol = 1e-9,
                                    std::vector<CiQuery>* log = nullptr);
bool well_represented(const ETree& t, const JointTable& p, double tol = 1e-9);

enum class RecoveryStage {
    NotPositive,
    NotTree,
    OrientationConflict,
    NotWellRepresented,
    NotImap,
};

const char* recovery_stage_name(RecoveryStage stage);

struct RecoveryFailure {
    RecoveryStage stage;
    std::string detail;
    std::optional<Statement> witness_statement;
    std::optional<std::array<VarId, 3>> witness_triple;
    std::optional<std::pair<VarId, VarId>> witness_pair;
};

struct RecoveryOutcome {
    std::optional<ETree> tree;
    std::optional<RecoveryFailure> failure;
    std::vector<CiQuery> queries; // every CI test issued, in issue order

    bool ok() const { return tree.has_value(); }
};

// Full pipeline: positivity check, skeleton, tree test, required sinks,
// orientation, then verification that the result actually represents p
// (basis membership and well-representation).
RecoveryOutcome recover(const JointTable& p, double tol = 1e-9);

} // namespace ebn
