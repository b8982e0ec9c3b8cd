#include "ebn/tree_basis.hpp"

#include <algorithm>

#include "ebn/error.hpp"

namespace ebn {

TreeBasis::TreeBasis(std::vector<BasisEntry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const BasisEntry& a, const BasisEntry& b) { return a.stmt < b.stmt; });
    // Collapse duplicate statements, keeping the first provenance.
    entries_.erase(std::unique(entries_.begin(), entries_.end(),
                               [](const BasisEntry& a, const BasisEntry& b) {
                                   return a.stmt == b.stmt;
                               }),
                   entries_.end());
}

StatementSet TreeBasis::statements() const {
    StatementSet out;
    for (const BasisEntry& e : entries_) out.insert(e.stmt);
    return out;
}

TreeBasis build_bt(const ETree& t) {
    const EDag& g = t.graph();
    const VarSet all = VarSet::full(t.size());
    std::vector<BasisEntry> entries;

    for (VarId x = 0; x < t.size(); ++x) {
        // Children of x give the conditional statements, every other
        // neighbour (parents and bidirected) the marginal ones.
        for (VarId s : g.children(x)) {
            VarSet side = t.subtree_through(x, s);
            VarSet rest = all - side - VarSet::single(x);
            if (!rest.empty())
                entries.push_back({Statement(side, VarSet::single(x), rest),
                                   x, s, BasisKind::Sigma});
        }
        for (VarId q : g.parents(x) | g.siblings(x)) {
            VarSet side = t.subtree_through(x, q);
            VarSet rest = all - g.descendants(x) - side;
            if (!rest.empty())
                entries.push_back({Statement(side, VarSet(), rest),
                                   x, q, BasisKind::Gamma});
        }
    }
    return TreeBasis(std::move(entries));
}

TreeBasis build_bs(const ETree& t) {
    const EDag& g = t.graph();
    const VarSet all = VarSet::full(t.size());
    std::vector<BasisEntry> entries;

    for (VarId x = 0; x < t.size(); ++x) {
        for (VarId s : g.children(x)) {
            VarSet side = t.subtree_through(x, s);
            VarSet rest = all - side - VarSet::single(x);
            if (!rest.empty())
                entries.push_back({Statement(side, VarSet::single(x), rest),
                                   x, s, BasisKind::Sigma});
        }
        // Marginal statements separate each non-child branch from the union
        // of the other non-child branches.
        VarSet qs = g.parents(x) | g.siblings(x);
        for (VarId q : qs) {
            VarSet side = t.subtree_through(x, q);
            VarSet others;
            for (VarId q2 : qs)
                if (q2 != q) others |= t.subtree_through(x, q2);
            if (!others.empty())
                entries.push_back({Statement(side, VarSet(), others),
                                   x, q, BasisKind::Gamma});
        }
    }
    return TreeBasis(std::move(entries));
}

ImapVerdict verify_etree_imap(const ETree& t, const JointTable& p, double tol,
                              bool collect_all, std::vector<CiQuery>* log) {
    if (!(t.universe() == p.universe()))
        throw Error(ErrorCode::VariableMismatch,
                    "tree and table disagree on the variable universe");

    TreeBasis basis = build_bt(t);
    ImapVerdict verdict{true, 0, std::nullopt, 0.0, {}};
    for (const BasisEntry& e : basis.entries()) {
        CiResult r = ci_holds(p, e.stmt, tol);
        if (log) log->push_back({e.stmt, r.holds, r.max_residual});
        ++verdict.tests_run;
        if (!r.holds) {
            if (verdict.imap) {
                verdict.imap = false;
                verdict.witness = e.stmt;
                verdict.witness_residual = r.max_residual;
            }
            if (!collect_all) break;
            verdict.failures.push_back({e.stmt, r.max_residual});
        }
    }
    return verdict;
}

} // namespace ebn
