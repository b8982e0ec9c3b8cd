#include "ebn/graph.hpp"

#include <algorithm>

#include "ebn/error.hpp"

namespace ebn {

namespace {

std::string edge_str(const Universe& u, VarId a, VarId b, const char* arrow) {
    return u.name(a) + " " + arrow + " " + u.name(b);
}

// Returns a directed cycle as a vertex sequence, or empty if acyclic.
std::vector<VarId> find_directed_cycle(const std::vector<VarSet>& children) {
    const int n = static_cast<int>(children.size());
    std::vector<int> state(static_cast<size_t>(n), 0); // 0 new, 1 on stack, 2 done
    std::vector<VarId> stack;

    // Iterative DFS keeping the current path so the witness can be cut out.
    std::vector<std::pair<VarId, VarSet>> frames;
    for (VarId root = 0; root < n; ++root) {
        if (state[static_cast<size_t>(root)] != 0) continue;
        frames.push_back({root, children[static_cast<size_t>(root)]});
        state[static_cast<size_t>(root)] = 1;
        stack.push_back(root);
        while (!frames.empty()) {
            auto& [v, todo] = frames.back();
            if (todo.empty()) {
                state[static_cast<size_t>(v)] = 2;
                stack.pop_back();
                frames.pop_back();
                continue;
            }
            VarId w = todo.first();
            todo.erase(w);
            int& sw = state[static_cast<size_t>(w)];
            if (sw == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                std::vector<VarId> cycle(it, stack.end());
                cycle.push_back(w);
                return cycle;
            }
            if (sw == 0) {
                sw = 1;
                stack.push_back(w);
                frames.push_back({w, children[static_cast<size_t>(w)]});
            }
        }
    }
    return {};
}

} // namespace

EDag validate_edag(Universe universe,
                   std::vector<std::pair<VarId, VarId>> directed,
                   std::vector<std::pair<VarId, VarId>> bidirected) {
    EDag g;
    const int n = universe.size();
    g.universe_ = std::move(universe);
    g.children_.assign(static_cast<size_t>(n), VarSet());
    g.parents_.assign(static_cast<size_t>(n), VarSet());
    g.siblings_.assign(static_cast<size_t>(n), VarSet());

    auto check_pair = [&](VarId a, VarId b, const char* arrow) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw Error(ErrorCode::UnknownVertex, "edge endpoint out of range");
        if (a == b)
            throw Error(ErrorCode::SelfLoop, edge_str(g.universe_, a, b, arrow));
        if (g.children_[static_cast<size_t>(a)].contains(b) ||
            g.children_[static_cast<size_t>(b)].contains(a) ||
            g.siblings_[static_cast<size_t>(a)].contains(b))
            throw Error(ErrorCode::ParallelEdge, edge_str(g.universe_, a, b, arrow));
    };

    for (auto [a, b] : directed) {
        check_pair(a, b, "->");
        g.children_[static_cast<size_t>(a)].insert(b);
        g.parents_[static_cast<size_t>(b)].insert(a);
    }
    for (auto [a, b] : bidirected) {
        check_pair(a, b, "<->");
        g.siblings_[static_cast<size_t>(a)].insert(b);
        g.siblings_[static_cast<size_t>(b)].insert(a);
    }

    auto cycle = find_directed_cycle(g.children_);
    if (!cycle.empty()) {
        std::string msg;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i) msg += " -> ";
            msg += g.universe_.name(cycle[i]);
        }
        throw Error(ErrorCode::DirectedCycle, msg);
    }
    return g;
}

EDag make_edag(std::vector<std::string> names,
               std::vector<std::pair<std::string, std::string>> directed,
               std::vector<std::pair<std::string, std::string>> bidirected) {
    Universe u(std::move(names));
    std::vector<std::pair<VarId, VarId>> dir, bidir;
    dir.reserve(directed.size());
    bidir.reserve(bidirected.size());
    for (auto& [a, b] : directed) dir.push_back({u.require(a), u.require(b)});
    for (auto& [a, b] : bidirected) bidir.push_back({u.require(a), u.require(b)});
    return validate_edag(std::move(u), std::move(dir), std::move(bidir));
}

std::vector<std::pair<VarId, VarId>> EDag::directed_edges() const {
    std::vector<std::pair<VarId, VarId>> out;
    for (VarId a = 0; a < size(); ++a)
        for (VarId b : children(a)) out.push_back({a, b});
    return out;
}

std::vector<std::pair<VarId, VarId>> EDag::bidirected_edges() const {
    std::vector<std::pair<VarId, VarId>> out;
    for (VarId a = 0; a < size(); ++a)
        for (VarId b : siblings(a))
            if (a < b) out.push_back({a, b});
    return out;
}

int EDag::edge_count() const {
    int dir = 0, bidir_ends = 0;
    for (VarId v = 0; v < size(); ++v) {
        dir += children(v).count();
        bidir_ends += siblings(v).count();
    }
    return dir + bidir_ends / 2;
}

bool EDag::is_pure_dag() const {
    for (VarId v = 0; v < size(); ++v)
        if (!siblings(v).empty()) return false;
    return true;
}

VarSet EDag::descendants(VarId x) const { return descendants(VarSet::single(x)); }

VarSet EDag::descendants(VarSet xs) const {
    VarSet seen = xs;
    VarSet frontier = xs;
    while (!frontier.empty()) {
        VarSet next;
        for (VarId v : frontier) next |= children(v);
        frontier = next - seen;
        seen |= frontier;
    }
    return seen;
}

VarSet EDag::ancestors(VarSet xs) const {
    VarSet seen = xs;
    VarSet frontier = xs;
    while (!frontier.empty()) {
        VarSet next;
        for (VarId v : frontier) next |= parents(v);
        frontier = next - seen;
        seen |= frontier;
    }
    return seen;
}

bool EDag::skeleton_is_tree() const {
    const int n = size();
    if (n == 0) return false;
    if (edge_count() != n - 1) return false;
    VarSet seen = VarSet::single(0);
    VarSet frontier = seen;
    while (!frontier.empty()) {
        VarSet next;
        for (VarId v : frontier) next |= neighbors(v);
        frontier = next - seen;
        seen |= frontier;
    }
    return seen == VarSet::full(n);
}

Trail make_trail(const EDag& g, const std::vector<VarId>& vertices) {
    if (vertices.empty())
        throw Error(ErrorCode::InvalidTrail, "empty vertex sequence");
    VarSet seen;
    for (VarId v : vertices) {
        if (v < 0 || v >= g.size())
            throw Error(ErrorCode::InvalidTrail, "vertex out of range");
        if (seen.contains(v))
            throw Error(ErrorCode::InvalidTrail, "vertex " + g.universe().name(v) + " repeats");
        seen.insert(v);
    }
    Trail t;
    t.vertices = vertices;
    t.steps.reserve(vertices.size() - 1);
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        VarId a = vertices[i], b = vertices[i + 1];
        if (g.has_directed(a, b))
            t.steps.push_back({EdgeKind::Directed, true});
        else if (g.has_directed(b, a))
            t.steps.push_back({EdgeKind::Directed, false});
        else if (g.has_bidirected(a, b))
            t.steps.push_back({EdgeKind::Bidirected, true});
        else
            throw Error(ErrorCode::InvalidTrail,
                        "no edge between " + g.universe().name(a) + " and " + g.universe().name(b));
    }
    return t;
}

VarSet sinks_on_trail(const EDag& g, const Trail& t) {
    // Re-derive the steps so a stale trail cannot silently disagree with g.
    Trail checked = make_trail(g, t.vertices);
    VarSet sinks;
    for (std::size_t i = 1; i + 1 <= checked.steps.size(); ++i) {
        const TrailStep& in = checked.steps[i - 1];
        const TrailStep& out = checked.steps[i];
        bool in_points_away = in.kind == EdgeKind::Directed && !in.forward;
        bool out_points_away = out.kind == EdgeKind::Directed && out.forward;
        if (!in_points_away && !out_points_away) sinks.insert(checked.vertices[i]);
    }
    return sinks;
}

bool is_trek(const EDag& g, const Trail& t) { return sinks_on_trail(g, t).empty(); }

EDag latent_transform(const EDag& g) {
    auto bidir = g.bidirected_edges();
    if (bidir.empty()) return g;

    std::vector<std::string> names = g.universe().names();
    std::vector<std::pair<VarId, VarId>> directed = g.directed_edges();
    for (std::size_t i = 0; i < bidir.size(); ++i) {
        std::string latent = "_L" + std::to_string(i);
        if (g.universe().find(latent))
            throw Error(ErrorCode::UniverseMismatch,
                        "latent name '" + latent + "' already used by the graph");
        VarId id = static_cast<VarId>(names.size());
        names.push_back(latent);
        directed.push_back({id, bidir[i].first});
        directed.push_back({id, bidir[i].second});
    }
    return validate_edag(Universe(std::move(names)), std::move(directed), {});
}

ETree::ETree(EDag g) : g_(std::move(g)) {
    if (!g_.skeleton_is_tree())
        throw Error(ErrorCode::NotATree,
                    "skeleton is not a connected spanning tree (" +
                        std::to_string(g_.size()) + " vertices, " +
                        std::to_string(g_.edge_count()) + " edges)");
}

Trail ETree::unique_trail(VarId a, VarId b) const {
    if (a < 0 || a >= size() || b < 0 || b >= size())
        throw Error(ErrorCode::UnknownVertex, "trail endpoint out of range");
    // BFS over the skeleton; predecessor links give the unique path.
    std::vector<VarId> pred(static_cast<size_t>(size()), -1);
    VarSet seen = VarSet::single(a);
    std::vector<VarId> queue{a};
    for (std::size_t qi = 0; qi < queue.size() && !seen.contains(b); ++qi) {
        VarId v = queue[qi];
        for (VarId w : g_.neighbors(v) - seen) {
            pred[static_cast<size_t>(w)] = v;
            seen.insert(w);
            queue.push_back(w);
        }
    }
    std::vector<VarId> path;
    for (VarId v = b; v != -1; v = pred[static_cast<size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return make_trail(g_, path);
}

VarSet ETree::subtree_through(VarId x, VarId nb) const {
    if (!g_.neighbors(x).contains(nb))
        throw Error(ErrorCode::InvalidTrail,
                    g_.universe().name(nb) + " is not adjacent to " + g_.universe().name(x));
    VarSet seen = VarSet::single(x) | VarSet::single(nb);
    VarSet frontier = VarSet::single(nb);
    while (!frontier.empty()) {
        VarSet next;
        for (VarId v : frontier) next |= g_.neighbors(v);
        frontier = next - seen;
        seen |= frontier;
    }
    seen.erase(x);
    return seen;
}

bool etree_isomorphic(const ETree& a, const ETree& b) {
    if (!(a.universe() == b.universe()))
        throw Error(ErrorCode::UniverseMismatch, "trees are over different universes");
    const EDag& ga = a.graph();
    const EDag& gb = b.graph();
    for (VarId v = 0; v < ga.size(); ++v)
        if (ga.neighbors(v) != gb.neighbors(v)) return false;

    // Same skeleton; compare sink placement on every length-2 chain.
    for (VarId mid = 0; mid < ga.size(); ++mid) {
        VarSet nbs = ga.neighbors(mid);
        for (VarId left : nbs)
            for (VarId right : nbs) {
                if (left >= right) continue;
                bool sink_a = !ga.has_directed(mid, left) && !ga.has_directed(mid, right);
                bool sink_b = !gb.has_directed(mid, left) && !gb.has_directed(mid, right);
                if (sink_a != sink_b) return false;
            }
    }
    return true;
}

} // namespace ebn
