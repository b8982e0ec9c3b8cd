#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ebn/error.hpp"

namespace ebn {

// Dense vertex/variable index into a Universe.
using VarId = int;

// A set of variables over a universe of at most 64 names, packed into one
// word.  Everything downstream (statements, closure, separation) leans on
// these being cheap value types.
class VarSet {
public:
    constexpr VarSet() = default;
    constexpr explicit VarSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr VarSet single(VarId v) { return VarSet(std::uint64_t{1} << v); }

    // {0, 1, ..., n-1}
    static constexpr VarSet full(int n) {
        return VarSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    static VarSet of(std::initializer_list<VarId> vs) {
        VarSet s;
        for (VarId v : vs) s.insert(v);
        return s;
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int count() const { return std::popcount(bits_); }
    constexpr bool contains(VarId v) const { return (bits_ >> v) & 1; }

    void insert(VarId v) { bits_ |= std::uint64_t{1} << v; }
    void erase(VarId v) { bits_ &= ~(std::uint64_t{1} << v); }

    constexpr VarSet operator|(VarSet o) const { return VarSet(bits_ | o.bits_); }
    constexpr VarSet operator&(VarSet o) const { return VarSet(bits_ & o.bits_); }
    constexpr VarSet operator-(VarSet o) const { return VarSet(bits_ & ~o.bits_); }
    VarSet& operator|=(VarSet o) { bits_ |= o.bits_; return *this; }
    VarSet& operator&=(VarSet o) { bits_ &= o.bits_; return *this; }
    VarSet& operator-=(VarSet o) { bits_ &= ~o.bits_; return *this; }

    constexpr bool disjoint(VarSet o) const { return (bits_ & o.bits_) == 0; }
    constexpr bool subset_of(VarSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(VarSet o) const { return (bits_ & o.bits_) != 0; }

    // Lowest member; only meaningful on non-empty sets.
    VarId first() const { return std::countr_zero(bits_); }

    friend constexpr bool operator==(VarSet a, VarSet b) { return a.bits_ == b.bits_; }
    friend constexpr auto operator<=>(VarSet a, VarSet b) { return a.bits_ <=> b.bits_; }

    // Iterates members in increasing order.
    class iterator {
    public:
        explicit iterator(std::uint64_t rest) : rest_(rest) {}
        VarId operator*() const { return std::countr_zero(rest_); }
        iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        bool operator!=(const iterator& o) const { return rest_ != o.rest_; }

    private:
        std::uint64_t rest_;
    };

    iterator begin() const { return iterator(bits_); }
    iterator end() const { return iterator(0); }

    std::vector<VarId> to_vector() const {
        std::vector<VarId> out;
        out.reserve(count());
        for (VarId v : *this) out.push_back(v);
        return out;
    }

private:
    std::uint64_t bits_ = 0;
};

// Invokes fn(U) for every subset U of s, empty set and s included, in
// increasing numeric order of the packed bits (deterministic).
template <typename Fn>
void for_each_subset(VarSet s, Fn&& fn) {
    const std::uint64_t bits = s.bits();
    std::uint64_t sub = 0;
    while (true) {
        fn(VarSet(sub));
        if (sub == bits) break;
        sub = (sub - bits) & bits; // next subset in counting order
    }
}

// An ordered list of distinct variable names.  The position of a name is its
// VarId; all bitset-coded sets are relative to one Universe.
class Universe {
public:
    Universe() = default;
    explicit Universe(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(VarId v) const { return names_.at(static_cast<size_t>(v)); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<VarId> find(std::string_view name) const;
    VarId require(std::string_view name) const; // throws UnknownVertex

    VarSet all() const { return VarSet::full(size()); }

    bool operator==(const Universe& o) const { return names_ == o.names_; }

    // Names are identifiers: [A-Za-z_][A-Za-z0-9_]*
    static bool valid_name(std::string_view name);

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VarId> ids_;
};

// Formats {a,c} style for error messages and debugging.
std::string to_string(VarSet s, const Universe& u);

} // namespace ebn
