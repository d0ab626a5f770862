#pragma once

#include <cstdint>
#include <vector>

#include "maxrank/circuit.hpp"
#include "maxrank/polynomial.hpp"

namespace maxrank {

// A weighted sum of d-th powers of affine forms.
struct PowerTerm {
    std::uint32_t coeff = 0;
    AffineForm form;
};

struct PowerSumForm {
    Field field;
    UniversePtr universe;
    std::uint32_t exponent = 1;
    std::vector<PowerTerm> terms;

    PowerSumForm(Field f, UniversePtr u) : field(f), universe(std::move(u)) {}

    Polynomial expand(std::uint64_t budget = kDefaultTermBudget) const;
};

// Writes a product of d affine forms as a signed sum of d-th powers of
// subset sums, scaled by 1/d!:
//   l_1 * ... * l_d = (1/d!) * sum over nonempty S of (-1)^(d-|S|) (sum_S l_u)^d
// At most 2^d - 1 terms; subsets whose forms cancel to zero are dropped. The
// modulus must exceed d so that d! is invertible; otherwise
// CharacteristicError. The returned decomposition is verified against the
// expanded product before it is handed back.
PowerSumForm fischer_decompose(const std::vector<AffineForm>& forms, Field field,
                               UniversePtr universe,
                               std::uint64_t budget = kDefaultTermBudget);

// Degree-d homogeneous part of the product of the forms, by a slice-wise
// product that never materializes other degrees.
Polynomial gate_degree_slice(const std::vector<AffineForm>& forms, std::uint32_t d,
                             Field field, const UniversePtr& universe);

// Greedy maximal independent subset of the forms, viewed as coordinate
// vectors with an explicit constant coordinate, plus exact coordinates of
// every input form over that basis.
struct FormBasis {
    std::vector<std::size_t> basis; // indices into the input list
    std::vector<std::vector<std::uint32_t>> coords; // one row per input form
};

FormBasis linear_basis(const std::vector<AffineForm>& forms, Field field,
                       std::size_t universe_size);

// Rewrites the degree-d slice of a product gate of affine forms as a sum of
// d-th powers of nonnegative integer combinations of a basis of the forms'
// homogeneous parts. With r the basis size, at most C(d+r, r) powers appear
// and every combination uses coefficients summing to at most d. Requires
// modulus > d; the result is verified against gate_degree_slice.
PowerSumForm sum_of_powers_rewrite(const std::vector<AffineForm>& gate,
                                   std::uint32_t d, Field field,
                                   UniversePtr universe,
                                   std::uint64_t budget = kDefaultTermBudget);

} // namespace maxrank
