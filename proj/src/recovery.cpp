#include "ebn/recovery.hpp"

#include <algorithm>
#include <deque>
#include <variant>

#include "ebn/error.hpp"

namespace ebn {

const char* recovery_stage_name(RecoveryStage stage) {
    switch (stage) {
    case RecoveryStage::NotPositive: return "NOT_POSITIVE";
    case RecoveryStage::NotTree: return "NOT_TREE";
    case RecoveryStage::OrientationConflict: return "ORIENTATION_CONFLICT";
    case RecoveryStage::NotWellRepresented: return "NOT_WELL_REPRESENTED";
    case RecoveryStage::NotImap: return "NOT_IMAP";
    }
    return "?";
}

bool Skeleton::is_tree() const {
    const int n = size();
    if (n == 0) return false;
    int edge_ends = 0;
    for (const VarSet& a : adj) edge_ends += a.count();
    if (edge_ends != 2 * (n - 1)) return false;
    VarSet seen = VarSet::single(0);
    VarSet frontier = seen;
    while (!frontier.empty()) {
        VarSet next;
        for (VarId v : frontier) next |= adj[static_cast<size_t>(v)];
        frontier = next - seen;
        seen |= frontier;
    }
    return seen == VarSet::full(n);
}

std::vector<std::pair<VarId, VarId>> Skeleton::edges() const {
    std::vector<std::pair<VarId, VarId>> out;
    for (VarId a = 0; a < size(); ++a)
        for (VarId b : adj[static_cast<size_t>(a)])
            if (a < b) out.push_back({a, b});
    return out;
}

namespace {

CiResult query(const JointTable& p, const Statement& s, double tol, std::vector<CiQuery>* log) {
    CiResult r = ci_holds(p, s, tol);
    if (log) log->push_back({s, r.holds, r.max_residual});
    return r;
}

} // namespace

Skeleton build_skeleton(const JointTable& p, double tol, std::vector<CiQuery>* log) {
    if (!is_strictly_positive(p))
        throw Error(ErrorCode::NotPositive, "the table has zero entries");

    const int n = p.var_count();
    Skeleton skel{p.universe(), std::vector<VarSet>(static_cast<size_t>(n))};
    const VarSet all = VarSet::full(n);

    // Keep a - b only if neither full conditioning nor the empty set
    // separates the pair.
    for (VarId a = 0; a < n; ++a)
        for (VarId b = a + 1; b < n; ++b) {
            VarSet pair = VarSet::single(a) | VarSet::single(b);
            bool drop =
                query(p, Statement(VarSet::single(a), all - pair, VarSet::single(b)), tol, log)
                    .holds ||
                query(p, Statement::marginal(VarSet::single(a), VarSet::single(b)), tol, log)
                    .holds;
            if (!drop) {
                skel.adj[static_cast<size_t>(a)].insert(b);
                skel.adj[static_cast<size_t>(b)].insert(a);
            }
        }
    return skel;
}

namespace {

// Internal signal that the sink constraints are unsatisfiable, carrying the
// witness chain.
struct Conflict {
    std::array<VarId, 3> triple;
};

enum class End : char { Unset, Away, NotAway };

// Orientation as edge-end labelling.  ends[b][u] is the label of edge b-u at
// b; Away means the edge leaves b (b -> u).  The rules are: no edge away at
// both ends, required chains not-away at both middle ends, every other chain
// away at one middle end.
struct EndState {
    const Skeleton& skel;
    std::vector<std::array<End, 64>> ends;
    std::deque<std::pair<VarId, VarId>> work; // freshly labelled (vertex, neighbour)
    std::vector<std::vector<std::pair<VarId, VarId>>> required_at;
    std::vector<VarSet> members; // union of required pairs per middle vertex

    explicit EndState(const SinkConstraint& c)
        : skel(c.skeleton), ends(static_cast<size_t>(c.skeleton.size())),
          required_at(static_cast<size_t>(c.skeleton.size())),
          members(static_cast<size_t>(c.skeleton.size())) {
        for (auto& row : ends) row.fill(End::Unset);
        for (const auto& triple : c.required) {
            auto [a, mid, b] = triple;
            if (a == b || !skel.adj[static_cast<size_t>(mid)].contains(a) ||
                !skel.adj[static_cast<size_t>(mid)].contains(b))
                throw Error(ErrorCode::InvalidConstraint,
                            "required triple is not a length-2 chain of the skeleton");
            required_at[static_cast<size_t>(mid)].push_back({std::min(a, b), std::max(a, b)});
            members[static_cast<size_t>(mid)].insert(a);
            members[static_cast<size_t>(mid)].insert(b);
        }
    }

    bool required(VarId mid, VarId a, VarId b) const {
        std::pair<VarId, VarId> key{std::min(a, b), std::max(a, b)};
        const auto& row = required_at[static_cast<size_t>(mid)];
        return std::find(row.begin(), row.end(), key) != row.end();
    }

    End get(VarId v, VarId u) const {
        return ends[static_cast<size_t>(v)][static_cast<size_t>(u)];
    }

    [[noreturn]] static void conflict(VarId a, VarId mid, VarId b) {
        throw Conflict{{std::min(a, b), mid, std::max(a, b)}};
    }

    void set(VarId v, VarId u, End value, VarId blame_other) {
        End& slot = ends[static_cast<size_t>(v)][static_cast<size_t>(u)];
        if (slot == value) return;
        if (slot != End::Unset) conflict(blame_other, v, u);
        slot = value;
        work.push_back({v, u});
    }

    void propagate() {
        while (!work.empty()) {
            auto [v, u] = work.front();
            work.pop_front();
            End label = get(v, u);
            if (label == End::Away) {
                // An edge may not point away from both ends.
                set(u, v, End::NotAway, v);
            } else if (members[static_cast<size_t>(v)].empty()) {
                // No required sink at v: at most one not-away end, so every
                // other end must point away from v.
                for (VarId w : skel.adj[static_cast<size_t>(v)])
                    if (w != u) set(v, w, End::Away, u);
            }
        }
    }
};

std::variant<ETree, Conflict> orient_impl(const SinkConstraint& c) {
    const Skeleton& skel = c.skeleton;
    if (!skel.is_tree())
        throw Error(ErrorCode::NotATree, "orientation needs a tree skeleton");
    const int n = skel.size();

    try {
        EndState state(c);

        // Vertices with required sinks.  All member ends are forced not-away,
        // so any two members must themselves be a required chain; the other
        // ends are forced away.
        for (VarId b = 0; b < n; ++b) {
            VarSet m = state.members[static_cast<size_t>(b)];
            if (m.empty()) continue;
            auto ms = m.to_vector();
            for (std::size_t i = 0; i < ms.size(); ++i)
                for (std::size_t j = i + 1; j < ms.size(); ++j)
                    if (!state.required(b, ms[i], ms[j])) EndState::conflict(ms[i], b, ms[j]);
            for (VarId u : skel.adj[static_cast<size_t>(b)])
                state.set(b, u, m.contains(u) ? End::NotAway : End::Away, u);
            state.propagate();
        }

        // Canonical completion: scanning vertices in name order, any still
        // free end points away; untouched components thus become out-trees
        // rooted at their lowest-named vertex.
        for (VarId v = 0; v < n; ++v)
            for (VarId u : skel.adj[static_cast<size_t>(v)])
                if (state.get(v, u) == End::Unset) {
                    state.set(v, u, End::Away, u);
                    state.propagate();
                }

        std::vector<std::pair<VarId, VarId>> directed, bidirected;
        for (auto [a, b] : skel.edges()) {
            End ea = state.get(a, b), eb = state.get(b, a);
            if (ea == End::Away)
                directed.push_back({a, b});
            else if (eb == End::Away)
                directed.push_back({b, a});
            else
                bidirected.push_back({a, b});
        }
        return ETree(validate_edag(skel.universe, std::move(directed), std::move(bidirected)));
    } catch (const Conflict& c2) {
        return c2;
    }
}

} // namespace

ETree orient(const SinkConstraint& c) {
    auto result = orient_impl(c);
    if (auto* conflict = std::get_if<Conflict>(&result)) {
        const Universe& u = c.skeleton.universe;
        throw Error(ErrorCode::OrientationConflict,
                    "chain (" + u.name(conflict->triple[0]) + ", " + u.name(conflict->triple[1]) +
                        ", " + u.name(conflict->triple[2]) +
                        ") cannot satisfy the sink constraints");
    }
    return std::get<ETree>(std::move(result));
}

WellRepCheck check_well_represented(const ETree& t, const JointTable& p, double tol,
                                    std::vector<CiQuery>* log) {
    if (!(t.universe() == p.universe()))
        throw Error(ErrorCode::VariableMismatch,
                    "tree and table disagree on the variable universe");
    for (VarId a = 0; a < t.size(); ++a)
        for (VarId b = a + 1; b < t.size(); ++b) {
            if (!is_trek(t.graph(), t.unique_trail(a, b))) continue;
            CiResult r = query(p, Statement::marginal(VarSet::single(a), VarSet::single(b)),
                               tol, log);
            if (r.holds) return {false, {{a, b}}, r.max_residual};
        }
    return {true, std::nullopt, 0.0};
}

bool well_represented(const ETree& t, const JointTable& p, double tol) {
    return check_well_represented(t, p, tol).ok;
}

RecoveryOutcome recover(const JointTable& p, double tol) {
    RecoveryOutcome out;

    if (!is_strictly_positive(p)) {
        out.failure = {RecoveryStage::NotPositive, "the table has zero entries",
                       std::nullopt, std::nullopt, std::nullopt};
        return out;
    }

    Skeleton skel = build_skeleton(p, tol, &out.queries);
    if (!skel.is_tree()) {
        int edges = static_cast<int>(skel.edges().size());
        out.failure = {RecoveryStage::NotTree,
                       "remaining skeleton has " + std::to_string(edges) + " edges over " +
                           std::to_string(skel.size()) +
                           " vertices and is not a connected spanning tree",
                       std::nullopt, std::nullopt, std::nullopt};
        return out;
    }

    // Required sinks: the middle of a chain is a sink exactly when the chain
    // ends are marginally independent.
    SinkConstraint constraint{skel, {}};
    for (VarId b = 0; b < skel.size(); ++b) {
        auto nbs = skel.adj[static_cast<size_t>(b)].to_vector();
        for (std::size_t i = 0; i < nbs.size(); ++i)
            for (std::size_t j = i + 1; j < nbs.size(); ++j) {
                CiResult r = query(
                    p, Statement::marginal(VarSet::single(nbs[i]), VarSet::single(nbs[j])),
                    tol, &out.queries);
                if (r.holds) constraint.required.push_back({nbs[i], b, nbs[j]});
            }
    }

    auto oriented = orient_impl(constraint);
    if (auto* conflict = std::get_if<Conflict>(&oriented)) {
        const auto& tr = conflict->triple;
        out.failure = {RecoveryStage::OrientationConflict,
                       "chain (" + skel.universe.name(tr[0]) + ", " + skel.universe.name(tr[1]) +
                           ", " + skel.universe.name(tr[2]) +
                           ") cannot satisfy the sink constraints",
                       std::nullopt, tr, std::nullopt};
        return out;
    }
    ETree tree = std::get<ETree>(std::move(oriented));

    ImapVerdict verdict = verify_etree_imap(tree, p, tol, false, &out.queries);
    if (!verdict.imap) {
        out.failure = {RecoveryStage::NotImap,
                       "a basis statement of the candidate tree fails in the table",
                       verdict.witness, std::nullopt, std::nullopt};
        return out;
    }

    WellRepCheck wr = check_well_represented(tree, p, tol, &out.queries);
    if (!wr.ok) {
        auto [a, b] = *wr.witness_pair;
        out.failure = {RecoveryStage::NotWellRepresented,
                       "pair (" + p.universe().name(a) + ", " + p.universe().name(b) +
                           ") is joined by a sink-free trail but marginally independent",
                       Statement::marginal(VarSet::single(a), VarSet::single(b)),
                       std::nullopt, std::make_pair(a, b)};
        return out;
    }

    out.tree = std::move(tree);
    return out;
}

} // namespace ebn
