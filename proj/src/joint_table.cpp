#include "ebn/joint_table.hpp"

#include <cmath>
#include <cstdlib>

#include "ebn/error.hpp"

namespace ebn {

namespace {

Universe universe_of(const std::vector<Variable>& variables) {
    std::vector<std::string> names;
    names.reserve(variables.size());
    for (const Variable& v : variables) names.push_back(v.name);
    return Universe(std::move(names));
}

} // namespace

JointTable::JointTable(std::vector<Variable> variables, std::vector<double> probs,
                       double tol_sum)
    : variables_(std::move(variables)), probs_(std::move(probs)),
      universe_(universe_of(variables_)) {
    std::size_t rows = 1;
    for (const Variable& v : variables_) {
        if (v.domain < 2)
            throw Error(ErrorCode::BadTable, "variable '" + v.name + "' needs a domain of >= 2");
        rows *= static_cast<std::size_t>(v.domain);
    }
    if (probs_.size() != rows)
        throw Error(ErrorCode::BadTable,
                    "expected " + std::to_string(rows) + " probabilities, got " +
                        std::to_string(probs_.size()));

    strides_.assign(variables_.size(), 1);
    for (int i = var_count() - 2; i >= 0; --i)
        strides_[static_cast<size_t>(i)] =
            strides_[static_cast<size_t>(i + 1)] *
            static_cast<std::size_t>(variables_[static_cast<size_t>(i + 1)].domain);

    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0))
            throw Error(ErrorCode::BadTable, "negative probability entry");
        total += p;
    }
    if (std::abs(total - 1.0) > tol_sum)
        throw Error(ErrorCode::BadTable,
                    "probabilities sum to " + std::to_string(total) + ", not 1");
}

std::size_t JointTable::index_of(std::span<const int> assignment) const {
    std::size_t idx = 0;
    for (int i = 0; i < var_count(); ++i)
        idx += static_cast<std::size_t>(assignment[static_cast<size_t>(i)]) *
               strides_[static_cast<size_t>(i)];
    return idx;
}

double JointTable::prob(std::span<const int> assignment) const {
    return probs_[index_of(assignment)];
}

JointTable marginal(const JointTable& p, VarSet keep) {
    if (keep.empty()) throw Error(ErrorCode::EmptyKeepSet, "marginal onto the empty set");
    if (!keep.subset_of(VarSet::full(p.var_count())))
        throw Error(ErrorCode::VariableMismatch, "keep set mentions unknown variables");

    std::vector<Variable> vars;
    std::vector<int> kept_ids;
    for (VarId v : keep) {
        vars.push_back(p.variable(v));
        kept_ids.push_back(v);
    }

    std::size_t rows = 1;
    for (const Variable& v : vars) rows *= static_cast<std::size_t>(v.domain);
    std::vector<double> out(rows, 0.0);

    // Walk the source table once, projecting each row index onto the kept
    // variables.
    const int n = p.var_count();
    std::vector<int> assignment(static_cast<size_t>(n), 0);
    for (std::size_t src = 0; src < p.rows(); ++src) {
        std::size_t dst = 0, stride = rows;
        for (int ki : kept_ids) {
            stride /= static_cast<std::size_t>(p.variable(ki).domain);
            dst += static_cast<std::size_t>(assignment[static_cast<size_t>(ki)]) * stride;
        }
        out[dst] += p.probs()[src];
        for (int i = n - 1; i >= 0; --i) {
            if (++assignment[static_cast<size_t>(i)] < p.variable(i).domain) break;
            assignment[static_cast<size_t>(i)] = 0;
        }
    }
    // tol_sum is loose here only to absorb float accumulation noise.
    return JointTable(std::move(vars), std::move(out), 1e-6);
}

bool is_strictly_positive(const JointTable& p) {
    for (double v : p.probs())
        if (v <= 0.0) return false;
    return true;
}

namespace {

// Sums p onto the variables of `keep` and exposes indexed lookup; keep may
// be empty (the all-marginal, a single cell holding the total mass).
class MarginalAccumulator {
public:
    MarginalAccumulator(const JointTable& p, VarSet keep) {
        rows_ = 1;
        for (VarId v : keep) {
            ids_.push_back(v);
            rows_ *= static_cast<std::size_t>(p.variable(v).domain);
        }
        values_.assign(rows_, 0.0);

        const int n = p.var_count();
        std::vector<int> assignment(static_cast<size_t>(n), 0);
        for (std::size_t src = 0; src < p.rows(); ++src) {
            values_[project(p, assignment)] += p.probs()[src];
            for (int i = n - 1; i >= 0; --i) {
                if (++assignment[static_cast<size_t>(i)] < p.variable(i).domain) break;
                assignment[static_cast<size_t>(i)] = 0;
            }
        }
    }

    std::size_t project(const JointTable& p, const std::vector<int>& assignment) const {
        std::size_t idx = 0, stride = rows_;
        for (int ki : ids_) {
            stride /= static_cast<std::size_t>(p.variable(ki).domain);
            idx += static_cast<std::size_t>(assignment[static_cast<size_t>(ki)]) * stride;
        }
        return idx;
    }

    double at(const JointTable& p, const std::vector<int>& assignment) const {
        return values_[project(p, assignment)];
    }

private:
    std::vector<int> ids_;
    std::size_t rows_;
    std::vector<double> values_;
};

} // namespace

CiResult ci_holds(const JointTable& p, const Statement& s, double tol) {
    if (!s.support().subset_of(VarSet::full(p.var_count())))
        throw Error(ErrorCode::VariableMismatch, "statement mentions unknown variables");

    MarginalAccumulator pxyz(p, s.x | s.y | s.z);
    MarginalAccumulator pxz(p, s.x | s.z);
    MarginalAccumulator pyz(p, s.y | s.z);
    MarginalAccumulator pz(p, s.z);

    // Iterate over every value combination of X u Y u Z, leaving the other
    // variables pinned at 0 (they do not feed any of the four lookups).
    std::vector<VarId> support = (s.x | s.y | s.z).to_vector();
    std::vector<int> assignment(static_cast<size_t>(p.var_count()), 0);
    double worst = 0.0;
    while (true) {
        double residual = std::abs(pxyz.at(p, assignment) * pz.at(p, assignment) -
                                   pxz.at(p, assignment) * pyz.at(p, assignment));
        if (residual > worst) worst = residual;
        std::size_t i = 0;
        for (; i < support.size(); ++i) {
            int v = support[i];
            if (++assignment[static_cast<size_t>(v)] < p.variable(v).domain) break;
            assignment[static_cast<size_t>(v)] = 0;
        }
        if (i == support.size()) break;
    }
    return {worst <= tol, worst};
}

} // namespace ebn
