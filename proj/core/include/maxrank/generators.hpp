#pragma once

#include <cstdint>
#include <vector>

#include "maxrank/circuit.hpp"
#include "maxrank/partition.hpp"
#include "maxrank/polynomial.hpp"

namespace maxrank {

// Entry (1,1) of the product of d n-by-n matrices with distinct variable
// entries, over imm_universe(n, d). Has exactly n^(d-1) monomials.
Polynomial gen_imm(std::size_t n, std::size_t d, Field field,
                   std::uint64_t budget = kDefaultTermBudget);

// The whole product matrix, row-major: entry (j, k) at index (j-1)*n + (k-1).
std::vector<Polynomial> gen_imm_grid(std::size_t n, std::size_t d, Field field,
                                     std::uint64_t budget = kDefaultTermBudget);

// Multilinear polynomial on x1..xn (n divisible by 4) with one monomial per
// size-(n/4) subset S of the first half: the product of the variables of S
// and of its mirror image in the second half. Its coefficient matrix under
// the first-half/second-half split is a w-by-w identity block with
// w = C(n/2, n/4).
Polynomial gen_q(std::size_t n, Field field);

// First half of x1..xn to Y, rest to Z.
Partition q_partition(std::size_t n);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct SpsGenParams {
    std::size_t top_fanin = 2;
    std::size_t gate_fanin = 2; // forms per product gate
    std::size_t y_count = 2, z_count = 2;
    bool homogeneous = false;
    // 0: forms are free-random. Otherwise every gate draws its forms as
    // combinations of this many gate-local random forms, capping the
    // per-gate span dimension.
    std::size_t gate_dimension_cap = 0;
    // 0: off. Otherwise all gates share one pool of this many random forms,
    // capping the total span dimension of the circuit.
    std::size_t shared_pool = 0;
};

SigmaPiSigma gen_random_sps(const SpsGenParams& params, Field field,
                            std::uint64_t seed);

struct ProductSparseGenParams {
    std::uint32_t s = 1;          // sparse gates need a child with <= 2^s monomials
    std::uint32_t depth = 1;      // allowed non-disjoint products per path
    std::size_t max_leaves = 12;
    std::size_t y_count = 3, z_count = 3;
};

// Random formula that is (s, depth)-product-sparse by construction: product
// gates either split their variable pool (disjoint) or multiply by a sum of
// at most 2^s multilinear monomials (sparse).
Formula gen_random_product_sparse(const ProductSparseGenParams& params, Field field,
                                  std::uint64_t seed);

// Unconstrained random binary formula over the universe.
Formula gen_random_formula(const UniversePtr& universe, Field field,
                           std::size_t leaves, std::uint64_t seed);

struct AbpGenParams {
    std::size_t n = 3;         // half the variable count
    std::size_t depth = 4;     // levels - 1; at most 2n
    std::size_t max_width = 3; // interior level width
};

// Ordered branching program over x1..x(2n): transitions in the first half of
// the program use only x1..xn, later ones only x(n+1)..x(2n). Every such
// program passes the level split check.
Abp gen_ordered_abp(const AbpGenParams& params, Field field, std::uint64_t seed);

// Inner product sum y1*z1 + ... + yn*zn as a depth-2 branching program over
// yz_universe(n, n).
Abp gen_inner_product_abp(std::size_t n, Field field);

struct RandomPolyParams {
    std::size_t terms = 4;
    std::uint32_t max_degree = 3;
    bool multilinear = false;
    bool allow_constant_term = true;
};

Polynomial random_polynomial(const UniversePtr& universe, Field field,
                             const RandomPolyParams& params, std::uint64_t seed);

} // namespace maxrank
