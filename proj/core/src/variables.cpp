#include "maxrank/variables.hpp"

#include <cctype>

namespace maxrank {

bool valid_var_name(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

VarUniverse::VarUniverse(std::vector<std::string> names) : names_(std::move(names)) {
    for (VarId i = 0; i < names_.size(); ++i) {
        const std::string& n = names_[i];
        if (!valid_var_name(n))
            throw InputError("invalid variable name '" + n + "'");
        if (!index_.emplace(n, i).second)
            throw InputError("duplicate variable name '" + n + "'");
    }
}

std::shared_ptr<const VarUniverse> VarUniverse::of(std::vector<std::string> names) {
    return std::shared_ptr<const VarUniverse>(new VarUniverse(std::move(names)));
}

const std::string& VarUniverse::name(VarId v) const {
    if (v >= names_.size())
        throw UnknownVariableError("variable id " + std::to_string(v) + " out of range");
    return names_[v];
}

std::optional<VarId> VarUniverse::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VarId VarUniverse::require(const std::string& name) const {
    auto v = find(name);
    if (!v) throw UnknownVariableError("unknown variable '" + name + "'");
    return *v;
}

UniversePtr indexed_universe(const std::string& prefix, std::size_t count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
    return VarUniverse::of(std::move(names));
}

UniversePtr yz_universe(std::size_t y_count, std::size_t z_count) {
    std::vector<std::string> names;
    names.reserve(y_count + z_count);
    for (std::size_t i = 1; i <= y_count; ++i) names.push_back("y" + std::to_string(i));
    for (std::size_t i = 1; i <= z_count; ++i) names.push_back("z" + std::to_string(i));
    return VarUniverse::of(std::move(names));
}

} // namespace maxrank
