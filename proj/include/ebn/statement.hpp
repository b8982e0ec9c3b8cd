#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <vector>

#include "ebn/varset.hpp"

namespace ebn {

// A conditional-independence statement I(X, Z, Y): "X is independent of Y
// given Z".  X and Y are non-empty and X, Z, Y are pairwise disjoint.
// Statements compare lexicographically on (x, z, y) packed bits; that order
// is the canonical order used everywhere deterministic output is promised.
struct Statement {
    VarSet x, z, y;

    Statement(VarSet x_, VarSet z_, VarSet y_);

    static Statement marginal(VarSet x_, VarSet y_) { return Statement(x_, VarSet(), y_); }

    // Cheap validity test used by rule engines before constructing.
    static bool valid(VarSet x_, VarSet z_, VarSet y_) {
        return !x_.empty() && !y_.empty() && x_.disjoint(z_) && x_.disjoint(y_) && z_.disjoint(y_);
    }

    Statement symmetric() const { return Statement(y, z, x); }

    bool is_marginal() const { return z.empty(); }
    bool is_simple() const { return x.count() == 1 && y.count() == 1; }

    VarSet support() const { return x | z | y; }

    friend bool operator==(const Statement& a, const Statement& b) = default;
    friend auto operator<=>(const Statement& a, const Statement& b) = default;
};

struct StatementHash {
    std::size_t operator()(const Statement& s) const {
        // splitmix-style mixing of the three words
        auto mix = [](std::uint64_t h, std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return h;
        };
        std::uint64_t h = 0;
        h = mix(h, s.x.bits());
        h = mix(h, s.z.bits());
        h = mix(h, s.y.bits());
        return static_cast<std::size_t>(h);
    }
};

// A deterministic, ordered set of statements.  std::set keeps iteration in
// canonical order, which is what all output paths rely on.
class StatementSet {
public:
    StatementSet() = default;
    StatementSet(std::initializer_list<Statement> items) : items_(items) {}
    explicit StatementSet(const std::vector<Statement>& items)
        : items_(items.begin(), items.end()) {}

    bool insert(const Statement& s) { return items_.insert(s).second; }
    bool contains(const Statement& s) const { return items_.count(s) != 0; }
    bool contains_all(const StatementSet& o) const;

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    std::vector<Statement> to_vector() const { return {items_.begin(), items_.end()}; }

    bool operator==(const StatementSet& o) const = default;

private:
    std::set<Statement> items_;
};

} // namespace ebn
