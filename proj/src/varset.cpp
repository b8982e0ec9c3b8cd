#include "ebn/varset.hpp"

#include <cctype>

namespace ebn {

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > 64)
        throw Error(ErrorCode::UniverseTooLarge,
                    "universe holds " + std::to_string(names_.size()) + " names, limit is 64");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        const std::string& name = names_[i];
        if (!valid_name(name))
            throw Error(ErrorCode::InvalidName, "'" + name + "' is not an identifier");
        auto [it, fresh] = ids_.emplace(name, static_cast<VarId>(i));
        if (!fresh)
            throw Error(ErrorCode::InvalidName, "duplicate variable name '" + name + "'");
    }
}

std::optional<VarId> Universe::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

VarId Universe::require(std::string_view name) const {
    auto id = find(name);
    if (!id)
        throw Error(ErrorCode::UnknownVertex, "no variable named '" + std::string(name) + "'");
    return *id;
}

bool Universe::valid_name(std::string_view name) {
    if (name.empty()) return false;
    unsigned char head = static_cast<unsigned char>(name[0]);
    if (!std::isalpha(head) && head != '_') return false;
    for (char c : name.substr(1)) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (!std::isalnum(uc) && uc != '_') return false;
    }
    return true;
}

std::string to_string(VarSet s, const Universe& u) {
    std::string out = "{";
    bool first = true;
    for (VarId v : s) {
        if (!first) out += ",";
        out += u.name(v);
        first = false;
    }
    return out + "}";
}

} // namespace ebn
