#include "ebn/statement.hpp"

#include "ebn/error.hpp"

namespace ebn {

Statement::Statement(VarSet x_, VarSet z_, VarSet y_) : x(x_), z(z_), y(y_) {
    if (!valid(x_, z_, y_))
        throw Error(ErrorCode::InvalidStatement,
                    "X and Y must be non-empty and X, Z, Y pairwise disjoint");
}

bool StatementSet::contains_all(const StatementSet& o) const {
    for (const Statement& s : o)
        if (!contains(s)) return false;
    return true;
}

} // namespace ebn
