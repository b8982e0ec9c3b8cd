#include "ebn/separation.hpp"

#include <vector>

#include "ebn/error.hpp"

namespace ebn {

MSeparator::MSeparator(const EDag& g) : g_(g) {}

// Reachability over (vertex, entry-end) states.  The entry end at v is a
// head when the trail arrives through an arrowhead (from a parent or across
// a bidirected edge), a tail when it arrives against a directed edge.  An
// interior vertex is a sink on its trail exactly when both trail ends at it
// are heads; a sink passes only with a descendant in Z, anything else only
// when outside Z.
bool MSeparator::separated(const Statement& s) const {
    const EDag& d = g_;
    if (!s.support().subset_of(VarSet::full(d.size())))
        throw Error(ErrorCode::VariableMismatch, "statement mentions vertices outside the graph");

    const VarSet z = s.z;
    // Vertices with a descendant in Z, i.e. ancestors of Z (Z included).
    const VarSet anc_z = d.ancestors(z);

    VarSet seen_head, seen_tail;
    std::vector<std::pair<VarId, bool>> queue; // (vertex, entered through a head)
    // Trail endpoints are never sinks; seeding as tail entries gives exactly
    // that behaviour because X is disjoint from Z.
    for (VarId x : s.x) queue.push_back({x, false});

    while (!queue.empty()) {
        auto [v, head] = queue.back();
        queue.pop_back();
        VarSet& seen = head ? seen_head : seen_tail;
        if (seen.contains(v)) continue;
        seen.insert(v);
        if (s.y.contains(v)) return false; // active trail reached Y

        // Leaving through a tail (towards children) keeps v a non-sink;
        // leaving through a head makes v a sink iff it was entered by one.
        if (!z.contains(v))
            for (VarId c : d.children(v)) queue.push_back({c, true});
        if (head ? anc_z.contains(v) : !z.contains(v)) {
            for (VarId p : d.parents(v)) queue.push_back({p, false});
            for (VarId sb : d.siblings(v)) queue.push_back({sb, true});
        }
    }
    return true;
}

bool m_separated(const EDag& g, const Statement& s) { return MSeparator(g).separated(s); }

namespace {

void check_enumeration_limit(const EDag& g, int limit) {
    if (g.size() > limit)
        throw Error(ErrorCode::UniverseTooLarge,
                    "enumeration over " + std::to_string(g.size()) +
                        " vertices exceeds the limit of " + std::to_string(limit));
}

} // namespace

StatementSet enumerate_model(const EDag& g, int limit) {
    check_enumeration_limit(g, limit);
    const int n = g.size();
    MSeparator sep(g);
    StatementSet model;

    // Each vertex independently joins X, Z, Y or stays out: 4^n assignments.
    std::vector<int> role(static_cast<size_t>(n), 0);
    while (true) {
        VarSet x, z, y;
        for (VarId v = 0; v < n; ++v) {
            switch (role[static_cast<size_t>(v)]) {
            case 0: break;
            case 1: x.insert(v); break;
            case 2: z.insert(v); break;
            case 3: y.insert(v); break;
            }
        }
        if (!x.empty() && !y.empty()) {
            Statement s(x, z, y);
            if (sep.separated(s)) model.insert(s);
        }
        int i = 0;
        for (; i < n; ++i) {
            if (++role[static_cast<size_t>(i)] < 4) break;
            role[static_cast<size_t>(i)] = 0;
        }
        if (i == n) break;
    }
    return model;
}

StatementSet recursive_basis(const EDag& d) {
    if (!d.is_pure_dag())
        throw Error(ErrorCode::HasBidirectedEdge,
                    "the per-vertex basis is defined for pure dags only");
    StatementSet basis;
    const VarSet all = VarSet::full(d.size());
    for (VarId v = 0; v < d.size(); ++v) {
        VarSet pa = d.parents(v);
        VarSet rest = all - d.descendants(v) - pa;
        if (!rest.empty()) basis.insert(Statement(VarSet::single(v), pa, rest));
    }
    return basis;
}

StatementSet simple_statements(const EDag& g, int limit) {
    check_enumeration_limit(g, limit);
    const int n = g.size();
    MSeparator sep(g);
    StatementSet out;
    for (VarId a = 0; a < n; ++a)
        for (VarId b = 0; b < n; ++b) {
            if (a == b) continue;
            VarSet rest = VarSet::full(n) - VarSet::single(a) - VarSet::single(b);
            for_each_subset(rest, [&](VarSet z) {
                Statement s(VarSet::single(a), z, VarSet::single(b));
                if (sep.separated(s)) out.insert(s);
            });
        }
    return out;
}

} // namespace ebn
