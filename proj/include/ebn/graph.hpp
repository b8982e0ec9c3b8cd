#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ebn/statement.hpp"
#include "ebn/varset.hpp"

namespace ebn {

// A mixed graph with directed (a -> b) and bidirected (a <-> b) edges, no
// self loops, at most one edge per vertex pair, and no directed cycles.
// Bidirected edges stand for an unobserved common cause of their endpoints.
// Instances are immutable once built; construct through validate_edag().
class EDag {
public:
    int size() const { return universe_.size(); }
    const Universe& universe() const { return universe_; }

    VarSet children(VarId v) const { return children_[static_cast<size_t>(v)]; }
    VarSet parents(VarId v) const { return parents_[static_cast<size_t>(v)]; }
    VarSet siblings(VarId v) const { return siblings_[static_cast<size_t>(v)]; } // bidirected neighbours
    VarSet neighbors(VarId v) const {
        size_t i = static_cast<size_t>(v);
        return children_[i] | parents_[i] | siblings_[i];
    }

    bool has_directed(VarId a, VarId b) const { return children_[static_cast<size_t>(a)].contains(b); }
    bool has_bidirected(VarId a, VarId b) const { return siblings_[static_cast<size_t>(a)].contains(b); }
    bool adjacent(VarId a, VarId b) const { return neighbors(a).contains(b); }

    // Sorted by (tail, head); bidirected pairs are stored with min < max.
    std::vector<std::pair<VarId, VarId>> directed_edges() const;
    std::vector<std::pair<VarId, VarId>> bidirected_edges() const;
    int edge_count() const;

    bool is_pure_dag() const;

    // Vertices reachable from x by directed paths, x itself included.
    VarSet descendants(VarId x) const;
    VarSet descendants(VarSet xs) const;
    VarSet ancestors(VarSet xs) const; // dual closure, xs included

    // Skeleton (adjacency ignoring kinds) is a connected spanning tree.
    bool skeleton_is_tree() const;

    friend EDag validate_edag(Universe universe,
                              std::vector<std::pair<VarId, VarId>> directed,
                              std::vector<std::pair<VarId, VarId>> bidirected);

private:
    EDag() = default;

    Universe universe_;
    std::vector<VarSet> children_;
    std::vector<VarSet> parents_;
    std::vector<VarSet> siblings_;
};

// Checks the three structural rules (no self loops, no parallel edges, no
// directed cycle) and builds the graph.  The DirectedCycle error message
// names a witness cycle.
EDag validate_edag(Universe universe,
                   std::vector<std::pair<VarId, VarId>> directed,
                   std::vector<std::pair<VarId, VarId>> bidirected);

// Convenience: build from names and name pairs.
EDag make_edag(std::vector<std::string> names,
               std::vector<std::pair<std::string, std::string>> directed,
               std::vector<std::pair<std::string, std::string>> bidirected);

enum class EdgeKind { Directed, Bidirected };

struct TrailStep {
    EdgeKind kind;
    bool forward; // for directed edges: true iff the edge points from step i to step i+1
};

// A simple trail: distinct vertices, consecutive ones adjacent.  Steps are
// the annotations of the traversed edges.
struct Trail {
    std::vector<VarId> vertices;
    std::vector<TrailStep> steps;

    std::size_t length() const { return steps.size(); }
};

// Builds (and validates) the trail along the given vertex sequence.
Trail make_trail(const EDag& g, const std::vector<VarId>& vertices);

// Interior vertices where neither adjacent trail edge points away from the
// vertex.  Endpoints are never sinks.
VarSet sinks_on_trail(const EDag& g, const Trail& t);

// A trek is a trail without sinks.
bool is_trek(const EDag& g, const Trail& t);

// Replaces every bidirected edge x <-> y by a fresh latent vertex L with
// L -> x and L -> y.  Latents are named "_L0", "_L1", ... following the
// sorted bidirected edge order and are appended after the original
// universe, so original VarIds are preserved.
EDag latent_transform(const EDag& g);

// An EDag whose skeleton is a connected spanning tree.
class ETree {
public:
    explicit ETree(EDag g); // throws NotATree

    const EDag& graph() const { return g_; }
    int size() const { return g_.size(); }
    const Universe& universe() const { return g_.universe(); }

    // The unique simple trail from a to b (a == b gives the single-vertex trail).
    Trail unique_trail(VarId a, VarId b) const;

    // All vertices whose unique trail to x passes through neighbour nb
    // (nb included, x excluded).
    VarSet subtree_through(VarId x, VarId nb) const;

private:
    EDag g_;
};

// True iff the trees share the universe-wise skeleton and agree on which
// interior vertices of length-2 chains are sinks.  Both trees must be over
// the same universe (else UniverseMismatch).
bool etree_isomorphic(const ETree& a, const ETree& b);

} // namespace ebn
