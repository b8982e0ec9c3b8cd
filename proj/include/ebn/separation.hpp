#pragma once

#include <vector>

#include "ebn/graph.hpp"
#include "ebn/statement.hpp"

namespace ebn {

// Decides m-separation statements on one graph.  Answers queries with a
// linear-time reachability sweep over (vertex, entry-end) states taken
// directly on the mixed graph, so it is cheap to ask many statements of the
// same graph and never outgrows the variable cap the way an explicit latent
// expansion would.
class MSeparator {
public:
    explicit MSeparator(const EDag& g);

    // True iff every trail between X and Y is blocked by Z.
    bool separated(const Statement& s) const;

    const EDag& graph() const { return g_; }

private:
    EDag g_;
};

// One-shot form of MSeparator::separated.
bool m_separated(const EDag& g, const Statement& s);

// All of M(g): every statement I(X, Z, Y) over disjoint subsets of the
// universe with X, Y non-empty that m-separation validates.  Guarded by
// `limit` on the universe size (4^n statements are enumerated).
StatementSet enumerate_model(const EDag& g, int limit = 7);

// The classical per-vertex basis for a pure dag: for each vertex v,
// I({v}, Pa(v), NonDesc(v) \ Pa(v)) with vacuous statements omitted.
// Throws HasBidirectedEdge on mixed graphs.
StatementSet recursive_basis(const EDag& d);

// Members of M(g) with singleton X and Y; same universe-size guard.
StatementSet simple_statements(const EDag& g, int limit = 7);

} // namespace ebn
