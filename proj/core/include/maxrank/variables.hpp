#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxrank/errors.hpp"

namespace maxrank {

using VarId = std::uint32_t;

// An ordered, immutable set of named variables. The order fixes the
// graded-lex term order, support bitmask layout and every serialization.
// Names must match [A-Za-z][A-Za-z0-9_]* and be unique.
class VarUniverse {
public:
    static std::shared_ptr<const VarUniverse> of(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(VarId v) const;
    std::optional<VarId> find(const std::string& name) const;
    VarId require(const std::string& name) const;
    const std::vector<std::string>& names() const { return names_; }

    bool same_names(const VarUniverse& o) const { return names_ == o.names_; }

private:
    explicit VarUniverse(std::vector<std::string> names);
    std::vector<std::string> names_;
    std::map<std::string, VarId> index_;
};

using UniversePtr = std::shared_ptr<const VarUniverse>;

bool valid_var_name(const std::string& name);

// Variables "<prefix>1".."<prefix>count".
UniversePtr indexed_universe(const std::string& prefix, std::size_t count);

// y1..ym followed by z1..zk; the standard layout for partitioned variables.
UniversePtr yz_universe(std::size_t y_count, std::size_t z_count);

// Two polynomials (or a polynomial and a substitution) may only interact when
// their universes agree; pointer identity is the fast path.
inline void require_same_universe(const UniversePtr& a, const UniversePtr& b,
                                  const char* what) {
    if (a == b) return;
    if (a && b && a->same_names(*b)) return;
    throw InputError(std::string(what) + ": variable universes differ");
}

} // namespace maxrank
