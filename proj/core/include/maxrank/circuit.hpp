#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "maxrank/polynomial.hpp"
#include "maxrank/variables.hpp"

namespace maxrank {

// c + sum of coeff * var. The building block of depth-three circuits and
// branching program edge weights.
struct AffineForm {
    std::uint32_t constant = 0;
    std::map<VarId, std::uint32_t> linear;

    bool is_zero() const { return constant == 0 && linear.empty(); }
    bool homogeneous() const { return constant == 0; }
    Polynomial to_polynomial(Field field, const UniversePtr& universe) const;
    // Coordinates (constant, var 0, ..., var n-1) over the universe.
    std::vector<std::uint32_t> coordinates(std::size_t universe_size) const;

    bool operator==(const AffineForm& o) const {
        return constant == o.constant && linear == o.linear;
    }
};

// Arithmetic formula: a binary tree stored as a flat node vector. Children
// always precede their parent, every node feeds exactly one parent and the
// root is the last node. Leaves are variables, constants or univariate
// polynomials in one variable (the shape preprocessing produces).
class Formula {
public:
    enum class Kind : std::uint8_t { Var, Const, UPoly, Plus, Times };

    struct Node {
        Kind kind;
        VarId var = 0;                      // Var, UPoly
        std::uint32_t constant = 0;         // Const
        std::vector<std::uint32_t> coeffs;  // UPoly, low degree first
        std::uint32_t left = 0, right = 0;  // Plus, Times
    };

    Formula(Field field, UniversePtr universe)
        : field_(field), universe_(std::move(universe)) {}

    std::uint32_t add_var(VarId v);
    std::uint32_t add_const(std::uint32_t c);
    // coeffs low degree first; must have a nonzero coefficient at degree >= 1.
    std::uint32_t add_upoly(VarId v, std::vector<std::uint32_t> coeffs);
    std::uint32_t add_plus(std::uint32_t l, std::uint32_t r);
    std::uint32_t add_times(std::uint32_t l, std::uint32_t r);

    const Field& field() const { return field_; }
    const UniversePtr& universe() const { return universe_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(std::uint32_t id) const { return nodes_.at(id); }
    std::size_t size() const { return nodes_.size(); }
    std::uint32_t root() const;
    bool is_leaf(std::uint32_t id) const {
        Kind k = nodes_.at(id).kind;
        return k != Kind::Plus && k != Kind::Times;
    }

    // Confirms the tree invariants: nonempty, children precede parents and
    // feed exactly one parent each, exactly one root.
    void validate() const;

    // The polynomial at `id` (default: the root), distributing products
    // under the term budget.
    Polynomial expand(std::uint64_t budget = kDefaultTermBudget) const;
    Polynomial expand_node(std::uint32_t id,
                           std::uint64_t budget = kDefaultTermBudget) const;
    // One polynomial per node, in one forward pass.
    std::vector<Polynomial> expand_all(std::uint64_t budget = kDefaultTermBudget) const;

private:
    std::uint32_t add_node(Node n);
    void claim_child(std::uint32_t id);

    Field field_;
    UniversePtr universe_;
    std::vector<Node> nodes_;
    std::vector<bool> claimed_;
};

// Replaces every variable leaf occurrence by a random univariate polynomial
// of degree in [1, max_degree] in the same variable. Node ids and the tree
// shape are preserved, so per-node analyses line up before and after.
Formula preprocess(const Formula& f, std::uint64_t seed, std::uint32_t max_degree = 2);

// Depth-three circuit: a sum of products of affine forms.
struct SigmaPiSigma {
    Field field;
    UniversePtr universe;
    std::vector<std::vector<AffineForm>> gates;

    SigmaPiSigma(Field f, UniversePtr u) : field(f), universe(std::move(u)) {}

    std::size_t top_fanin() const { return gates.size(); }
    std::size_t max_gate_fanin() const;
    bool homogeneous() const;
    void validate() const;
    Polynomial expand(std::uint64_t budget = kDefaultTermBudget) const;
};

// Layered algebraic branching program. Level 0 holds the source, the last
// level the sink; edges connect consecutive levels and carry affine weights.
// The program computes the sum over source-sink paths of the product of the
// weights along the path.
struct Abp {
    struct Edge {
        std::uint32_t from = 0, to = 0;
        AffineForm weight;
    };

    Field field;
    UniversePtr universe;
    std::vector<std::vector<std::uint32_t>> levels; // node ids, level by level
    std::vector<Edge> edges;

    Abp(Field f, UniversePtr u) : field(f), universe(std::move(u)) {}

    std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
    std::size_t node_count() const;
    std::uint32_t source() const { return levels.front().front(); }
    std::uint32_t sink() const { return levels.back().front(); }
    // level_of[node id]
    std::vector<std::uint32_t> level_map() const;
    void validate() const;
    // True when every edge weight is a homogeneous linear form.
    bool homogeneous() const;
    Polynomial expand(std::uint64_t budget = kDefaultTermBudget) const;
};

// Sum over paths from `from` to `to` of the product of edge weights; the
// polynomial computed by the segment between the two nodes.
Polynomial abp_segment_poly(const Abp& abp, std::uint32_t from, std::uint32_t to,
                            std::uint64_t budget = kDefaultTermBudget);

} // namespace maxrank
