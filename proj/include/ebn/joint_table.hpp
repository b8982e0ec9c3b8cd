#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ebn/statement.hpp"
#include "ebn/varset.hpp"

namespace ebn {

struct Variable {
    std::string name;
    int domain; // >= 2

    bool operator==(const Variable&) const = default;
};

// An exact discrete joint distribution: ordered variables and a dense
// row-major probability vector (last variable fastest).  Entries must be
// non-negative and sum to 1 within tol_sum.
class JointTable {
public:
    JointTable(std::vector<Variable> variables, std::vector<double> probs,
               double tol_sum = 1e-9);

    int var_count() const { return static_cast<int>(variables_.size()); }
    const Variable& variable(int i) const { return variables_[static_cast<size_t>(i)]; }
    const std::vector<Variable>& variables() const { return variables_; }
    const Universe& universe() const { return universe_; }

    std::size_t rows() const { return probs_.size(); }
    const std::vector<double>& probs() const { return probs_; }

    // Row-major stride of variable i.
    std::size_t stride(int i) const { return strides_[static_cast<size_t>(i)]; }

    double prob(std::span<const int> assignment) const;
    std::size_t index_of(std::span<const int> assignment) const;

private:
    std::vector<Variable> variables_;
    std::vector<double> probs_;
    std::vector<std::size_t> strides_;
    Universe universe_;
};

struct CiResult {
    bool holds;
    double max_residual;

    explicit operator bool() const { return holds; }
};

// Tests I(X,Z,Y) in p exactly: for every value combination,
// |P(x,y,z) P(z) - P(x,z) P(y,z)| <= tol.  Reports the worst residual.
CiResult ci_holds(const JointTable& p, const Statement& s, double tol = 1e-9);

// A CI query issued against a table, with its verdict.
struct CiQuery {
    Statement stmt;
    bool holds;
    double residual;
};

// Exact marginal onto `keep` (non-empty), preserving variable order.
JointTable marginal(const JointTable& p, VarSet keep);

bool is_strictly_positive(const JointTable& p);

} // namespace ebn
