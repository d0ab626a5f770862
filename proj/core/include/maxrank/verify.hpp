#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxrank/coeff_matrix.hpp"
#include "maxrank/field.hpp"
#include "maxrank/report.hpp"

namespace maxrank {

inline constexpr std::uint64_t kDefaultCheckSeed = 1729;

struct CheckConfig {
    // Field for the field-generic suites; checks whose statement pins a
    // characteristic ignore it.
    Field field{2};
    std::uint64_t seed = kDefaultCheckSeed;
    // 0 picks the per-check default instance count.
    std::uint64_t trials = 0;
    std::uint64_t budget = kDefaultAssignmentBudget;
    std::size_t rank_limit = kDefaultRankLimit;
    unsigned jobs = 1;
};

// Matrix product polynomials under the odd/even layer split: rank equals
// n^(d-1), the monomial count matches it, and the nonzero block is a
// permuted identity. The _case variant checks a single size.
std::vector<VerdictReport> check_imm_rank(const CheckConfig& config = {});
std::vector<VerdictReport> check_imm_rank_case(std::size_t n, std::size_t d,
                                               const CheckConfig& config = {});

// Every entry of the product matrix reaches rank n^(d-1); entries from
// different product rows use disjoint row supports, and (for even d)
// entries from different product columns use disjoint column supports.
std::vector<VerdictReport> check_imm_grid(const CheckConfig& config = {});
std::vector<VerdictReport> check_imm_grid_case(std::size_t n, std::size_t d,
                                               const CheckConfig& config = {});

// The subset-pairing polynomial: rank exactly C(n/2, n/4), which beats
// 2^(n/2)/sqrt(n).
std::vector<VerdictReport> check_q_rank(const CheckConfig& config = {});
std::vector<VerdictReport> check_q_rank_case(std::size_t n,
                                             const CheckConfig& config = {});

// Randomized suites for the basic rank laws: the 2^a balance bound,
// additivity of the matrix and subadditivity of its rank, exact
// multiplicativity for variable-disjoint products, one-sided factors,
// linear factors, short bilinear sums, few-monomial polynomials and powers
// of a single form. config.field must be GF(2) or GF(3); instances stay
// small enough for exhaustive ranking.
std::vector<VerdictReport> check_propositions(const CheckConfig& config = {});

// Homogeneous depth-three circuits: rank at most top_fanin * 2^degree, with
// a two-gate instance attaining its bound. Over GF(3).
std::vector<VerdictReport> check_depth3_bound(const CheckConfig& config = {});

// Weak-node rank bound for product-sparse formulas, over GF(2), plus four
// pinned scenarios exercising each case of the bound's proof.
std::vector<VerdictReport> check_product_sparse_bound(const CheckConfig& config = {});

// Replacing leaf occurrences by univariate polynomials changes no per-node
// variable set, balance number or weak set.
std::vector<VerdictReport> check_preprocessing_invariance(const CheckConfig& config = {});

// Ordered branching programs: the first splitting level bounds the rank by
// width * 2^(n - i/2); the inner product program has rank exactly n; the
// interleaved single-path program splits at no level.
std::vector<VerdictReport> check_abp_bound(const CheckConfig& config = {});

// Depth-three circuits drawing all forms from a small pool: the power-sum
// rewrite stays within C(d+r, r) terms (GF(101)), and the rank stays within
// C(d+r, r) * (d+1) (GF(3), exhaustive).
std::vector<VerdictReport> check_total_dimension_bound(const CheckConfig& config = {});

// Observational: frequency of a random balanced split leaving the formula
// root k-weak, for growing k. An oversized k must give frequency zero.
std::vector<VerdictReport> partition_experiment(const CheckConfig& config = {});

// The claim ids accepted by run_checks, in canonical order.
const std::vector<std::string>& known_claims();

// Runs one claim suite by id, or every suite for "all".
std::vector<VerdictReport> run_checks(const std::string& claim,
                                      const CheckConfig& config = {});

} // namespace maxrank
