#pragma once

#include <cstdint>
#include <vector>

#include "maxrank/field.hpp"

namespace maxrank {

// Rank of a dense row-major matrix over GF(p). The data vector is consumed.
std::size_t fp_rank(const Field& field, std::size_t rows, std::size_t cols,
                    std::vector<std::uint32_t> data);

// Incremental row space over GF(p) with coordinate tracking. Vectors are
// inserted one by one; each either extends the basis (the greedy basis is
// the subsequence of inserted vectors that were independent at their turn)
// or is returned expressed over the basis chosen so far.
class FpSpan {
public:
    struct InsertResult {
        bool added;                        // v extended the basis
        std::vector<std::uint32_t> coords; // v over the basis after this insert
    };

    FpSpan(Field field, std::size_t dim) : field_(field), dim_(dim) {}

    InsertResult insert(const std::vector<std::uint32_t>& v);

    std::size_t rank() const { return echelon_.size(); }
    std::size_t dim() const { return dim_; }
    // For each basis element, the 0-based insert index that produced it.
    const std::vector<std::size_t>& basis_inserts() const { return basis_inserts_; }

private:
    Field field_;
    std::size_t dim_;
    std::size_t inserts_ = 0;
    // Echelon rows with leading coefficient 1, plus each row's expression
    // over the basis vectors.
    std::vector<std::vector<std::uint32_t>> echelon_;
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<std::uint32_t>> coords_;
    std::vector<std::size_t> basis_inserts_;
};

} // namespace maxrank
