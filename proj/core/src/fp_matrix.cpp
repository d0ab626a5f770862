#include "maxrank/fp_matrix.hpp"

#include "maxrank/errors.hpp"

namespace maxrank {

std::size_t fp_rank(const Field& field, std::size_t rows, std::size_t cols,
                    std::vector<std::uint32_t> data) {
    if (data.size() != rows * cols)
        throw InputError("matrix data does not match its dimensions");
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && data[pivot * cols + col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t c = col; c < cols; ++c)
                std::swap(data[pivot * cols + c], data[rank * cols + c]);
        const std::uint32_t inv = field.inv(data[rank * cols + col]);
        for (std::size_t r = pivot == rank ? rank + 1 : pivot; r < rows; ++r) {
            const std::uint32_t head = data[r * cols + col];
            if (head == 0) continue;
            const std::uint32_t factor = field.mul(head, inv);
            data[r * cols + col] = 0;
            for (std::size_t c = col + 1; c < cols; ++c) {
                std::uint32_t& cell = data[r * cols + c];
                cell = field.sub(cell, field.mul(factor, data[rank * cols + c]));
            }
        }
        ++rank;
    }
    return rank;
}

FpSpan::InsertResult FpSpan::insert(const std::vector<std::uint32_t>& v) {
    if (v.size() != dim_) throw InputError("vector dimension does not match span");
    const std::size_t insert_index = inserts_++;
    std::vector<std::uint32_t> cur = v;
    std::vector<std::uint32_t> coord(basis_inserts_.size(), 0);
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
        const std::uint32_t head = cur[pivots_[i]];
        if (head == 0) continue;
        for (std::size_t c = pivots_[i]; c < dim_; ++c)
            cur[c] = field_.sub(cur[c], field_.mul(head, echelon_[i][c]));
        for (std::size_t k = 0; k < coords_[i].size(); ++k)
            coord[k] = field_.add(coord[k], field_.mul(head, coords_[i][k]));
    }
    std::size_t lead = 0;
    while (lead < dim_ && cur[lead] == 0) ++lead;
    if (lead == dim_) return {false, std::move(coord)};

    // cur = v - sum(coord_k * basis_k); store it normalized, expressed over
    // the basis extended by v itself.
    const std::uint32_t inv = field_.inv(cur[lead]);
    for (std::size_t c = lead; c < dim_; ++c) cur[c] = field_.mul(cur[c], inv);
    std::vector<std::uint32_t> expr(basis_inserts_.size() + 1, 0);
    for (std::size_t k = 0; k < coord.size(); ++k)
        expr[k] = field_.mul(field_.neg(coord[k]), inv);
    expr.back() = inv;
    echelon_.push_back(std::move(cur));
    pivots_.push_back(lead);
    coords_.push_back(std::move(expr));
    basis_inserts_.push_back(insert_index);

    std::vector<std::uint32_t> self(basis_inserts_.size(), 0);
    self.back() = 1;
    return {true, std::move(self)};
}

} // namespace maxrank
