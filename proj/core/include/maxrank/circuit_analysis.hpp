#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maxrank/circuit.hpp"
#include "maxrank/partition.hpp"

namespace maxrank {

// Per-node syntactic facts. Balance quantities are stored doubled so that
// half-integer comparisons stay exact: a2 = 2 * min(|Y_v|, |Z_v|) and
// b2 = |Y_v| + |Z_v|.
struct NodeProfile {
    std::vector<VarId> y_vars, z_vars; // variables under the node, per side
    std::uint32_t a2 = 0;
    std::uint32_t b2 = 0;
    // Largest number of non-disjoint product gates on a leaf-to-node path.
    std::uint32_t ps_depth = 0;
};

std::vector<NodeProfile> node_profiles(const Formula& f, const YzSplit& split);

// A node is k-unbalanced when b - a >= k.
inline bool k_unbalanced(const NodeProfile& p, std::uint32_t k) {
    return p.b2 - p.a2 >= 2 * k;
}

enum class ProductGateKind : std::uint8_t { Disjoint, Sparse, Neither };

struct ProductGateInfo {
    std::uint32_t id = 0;
    ProductGateKind kind = ProductGateKind::Neither;
    // Monomial counts of the expanded children (sparseness evidence).
    std::uint64_t left_monomials = 0, right_monomials = 0;
};

// Labels every product gate: Disjoint when the children share no variable
// (checked syntactically), otherwise Sparse when some child expands to at
// most 2^s monomials. Disjoint wins when both apply.
std::vector<ProductGateInfo> classify_product_gates(
    const Formula& f, std::uint32_t s, std::uint64_t budget = kDefaultTermBudget);

struct ProductSparseCheck {
    bool ok = false;          // every product gate is Disjoint or Sparse
    std::uint32_t depth = 0;  // ps_depth of the root
    std::vector<std::uint32_t> offenders; // gates that are Neither
};

ProductSparseCheck is_product_sparse(const Formula& f, std::uint32_t s,
                                     std::uint64_t budget = kDefaultTermBudget);

// A path leaf -> ... -> v is central when every step at most doubles b; it
// is k-unbalanced when it passes through a k-unbalanced node. v is k-weak
// when every central path into it is k-unbalanced. For each node that is
// not weak the report carries one fully balanced central path as evidence.
struct WeakNodeReport {
    std::vector<bool> weak; // by node id
    std::map<std::uint32_t, std::vector<std::uint32_t>> balanced_path;
};

WeakNodeReport k_weak_nodes(const Formula& f, const YzSplit& split, std::uint32_t k);

struct SpsProperties {
    std::size_t top_fanin = 0;
    std::size_t max_gate_fanin = 0;
    bool homogeneous = false;
    // Dimensions of spans of the affine forms as vectors with an explicit
    // constant coordinate: per gate (maximum) and over all gates.
    std::size_t product_dimension = 0;
    std::size_t total_dimension = 0;
};

SpsProperties sps_properties(const SigmaPiSigma& c);

// Level check for an ordered branching program. The variable order of the
// universe is the order pi; the first half is H1, the second H2. A level i
// splits the program when every node v in it either draws all its
// source-side variables from H1 while the sink side uses at most 2n - i
// variables, or symmetrically. The first splitting level gives the rank
// bound |L_i| * 2^(n - i/2); bound_exponent2 stores 2n - i.
struct AbpPartitionCheck {
    bool partitioned = false;
    std::size_t level = 0;
    std::size_t level_width = 0;
    std::uint32_t bound_exponent2 = 0;
    std::vector<int> node_case; // per node of the level: 1, 2, or 0 (off-path)
    std::vector<std::string> failures; // one line per failing level
};

AbpPartitionCheck abp_partition_check(const Abp& abp);

} // namespace maxrank
