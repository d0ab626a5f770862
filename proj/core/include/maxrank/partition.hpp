#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxrank/polynomial.hpp"
#include "maxrank/variables.hpp"

namespace maxrank {

enum class Side : std::uint8_t { Y, Z };

// A universe whose variables are tagged Y or Z, with each variable knowing
// its slot (position among the variables of its own side). The coefficient
// matrix uses slots as bit positions in support masks.
class YzSplit {
public:
    YzSplit(UniversePtr universe, std::vector<Side> sides);

    // Tags every variable by its name prefix: 'y' or 'Y' goes left, 'z' or
    // 'Z' goes right. Matches the yz_universe layout.
    static YzSplit by_prefix(UniversePtr universe);

    const UniversePtr& universe() const { return universe_; }
    Side side(VarId v) const { return sides_.at(v); }
    std::uint32_t slot(VarId v) const { return slots_.at(v); }
    std::size_t y_count() const { return y_vars_.size(); }
    std::size_t z_count() const { return z_vars_.size(); }
    const std::vector<VarId>& y_vars() const { return y_vars_; }
    const std::vector<VarId>& z_vars() const { return z_vars_; }

private:
    UniversePtr universe_;
    std::vector<Side> sides_;
    std::vector<std::uint32_t> slots_;
    std::vector<VarId> y_vars_, z_vars_;
};

// A bijection from a domain universe onto y1..ym, z1..zk. Applying it to a
// polynomial renames variables; the coefficient matrix of the result is what
// the partition "sees" in the original polynomial.
class Partition {
public:
    // sides[v] tags domain variable v; slots follow domain order per side.
    Partition(UniversePtr domain, std::vector<Side> sides);

    // Uniform over all splits with |Y| = floor(n/2), via a seeded
    // Fisher-Yates shuffle.
    static Partition random_balanced(UniversePtr domain, std::uint64_t seed);

    // The iterated-matrix-product partition: x{i}_{j}_{k} goes to Y exactly
    // when i is odd. Domain must be imm_universe(n, d).
    static Partition imm(std::size_t n, std::size_t d);

    const UniversePtr& domain() const { return domain_; }
    const UniversePtr& codomain() const { return codomain_; }
    std::size_t y_count() const { return y_count_; }
    std::size_t z_count() const { return z_count_; }
    Side side(VarId v) const { return sides_.at(v); }
    const std::vector<Side>& sides() const { return sides_; }
    std::uint32_t slot(VarId v) const { return slots_.at(v); }
    // Codomain id of domain variable v.
    VarId image(VarId v) const;
    // Domain names on the Y (resp. Z) side, in slot order.
    std::vector<std::string> y_names() const;
    std::vector<std::string> z_names() const;

    YzSplit codomain_split() const;

    Polynomial apply(const Polynomial& f) const;

    // {"Y": [names...], "Z": [names...]}; listed order becomes slot order.
    std::string to_json() const;
    static Partition from_json(const std::string& text, UniversePtr domain);

private:
    Partition() = default;
    void index();

    UniversePtr domain_;
    UniversePtr codomain_;
    std::vector<Side> sides_;
    std::vector<std::uint32_t> slots_;
    std::size_t y_count_ = 0, z_count_ = 0;
};

// Variables x{i}_{j}_{k} for i in 1..d and j, k in 1..n, ordered by (i, j, k).
UniversePtr imm_universe(std::size_t n, std::size_t d);

} // namespace maxrank
