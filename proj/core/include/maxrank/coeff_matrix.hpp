#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "maxrank/partition.hpp"
#include "maxrank/polynomial.hpp"

namespace maxrank {

inline constexpr std::size_t kDefaultRankLimit = 4096;
inline constexpr std::uint64_t kDefaultAssignmentBudget = 1ull << 20;

// A coefficient matrix after a full substitution: a dense GF(p) block over
// the support pairs that carry at least one entry.
class ScalarMatrix {
public:
    ScalarMatrix(Field field, std::vector<std::uint64_t> row_supports,
                 std::vector<std::uint64_t> col_supports,
                 std::vector<std::uint32_t> data);

    const Field& field() const { return field_; }
    std::size_t rows() const { return row_supports_.size(); }
    std::size_t cols() const { return col_supports_.size(); }
    const std::vector<std::uint64_t>& row_supports() const { return row_supports_; }
    const std::vector<std::uint64_t>& col_supports() const { return col_supports_; }
    std::uint32_t at(std::size_t r, std::size_t c) const {
        return data_[r * col_supports_.size() + c];
    }

    std::size_t rank(std::size_t limit = kDefaultRankLimit) const;

private:
    Field field_;
    std::vector<std::uint64_t> row_supports_, col_supports_;
    std::vector<std::uint32_t> data_; // row-major
};

enum class MaxrankMode { Exhaustive, Sampled };

struct MaxrankOptions {
    MaxrankMode mode = MaxrankMode::Exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1000;                     // sampled mode only
    std::uint64_t budget = kDefaultAssignmentBudget; // exhaustive cap
    std::size_t rank_limit = kDefaultRankLimit;
    unsigned jobs = 1;
};

struct MaxrankResult {
    std::size_t value = 0;
    // True when the value is provably the maximum: either every substitution
    // was tried, or the matrix reached full rank.
    bool exact = false;
    Substitution witness; // first substitution attaining the value
    std::uint64_t substitutions_tried = 0;
    std::size_t matrix_rows = 0, matrix_cols = 0;
};

// The coefficient matrix of f under a Y/Z split. Rows are indexed by
// squarefree monomials over Y, columns by squarefree monomials over Z (as
// slot bitmasks); the entry at (p, q) collects every monomial of f whose
// Y-support is exactly supp(p) and Z-support exactly supp(q), divided by
// p*q. Summing p*q*entry over all cells gives f back.
class PolyCoeffMatrix {
public:
    static PolyCoeffMatrix build(const Polynomial& f, const YzSplit& split);
    static PolyCoeffMatrix build(const Polynomial& f, const Partition& pi);
    // Rejects non-multilinear input; for multilinear f the entries are the
    // (scaled) partial derivatives and the matrix is scalar.
    static PolyCoeffMatrix build_partial_derivatives(const Polynomial& f,
                                                     const YzSplit& split);

    const Field& field() const { return field_; }
    const YzSplit& split() const { return split_; }
    const std::map<std::pair<std::uint64_t, std::uint64_t>, Polynomial>& entries()
        const {
        return entries_;
    }

    // Distinct row (column) support masks carrying entries, ascending.
    const std::vector<std::uint64_t>& row_masks() const { return row_masks_; }
    const std::vector<std::uint64_t>& col_masks() const { return col_masks_; }

    // The cell polynomial; zero when the cell is empty.
    Polynomial entry(std::uint64_t ymask, std::uint64_t zmask) const;
    // Variables occurring inside entries, ascending. Substitutions for
    // exactly these decide every rank.
    std::vector<VarId> entry_variables() const;

    Monomial support_monomial(Side side, std::uint64_t mask) const;

    // Sum of p*q*entry over all cells; equals the source polynomial.
    Polynomial reconstruct() const;

    // Full substitution of the entry variables.
    ScalarMatrix substitute(const Substitution& s) const;

private:
    PolyCoeffMatrix(Field field, YzSplit split)
        : field_(field), split_(std::move(split)) {}

    Field field_;
    YzSplit split_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Polynomial> entries_;
    std::vector<std::uint64_t> row_masks_, col_masks_;
};

// Maximum of rank(M|s) over substitutions s of the entry variables.
// Exhaustive mode enumerates all p^k assignments (k = #entry variables) in
// odometer order, first variable most significant; it fails with
// BudgetExceededError when p^k exceeds the budget. Sampled mode draws
// `trials` independent assignments (trial t is seeded with
// derive_seed(seed, t)) and returns a certified lower bound.
MaxrankResult maxrank(const PolyCoeffMatrix& m, const MaxrankOptions& options = {});

// One line per nonzero cell: y_support,z_support,entry with supports as
// monomial text and the entry in canonical polynomial text.
std::string to_csv(const PolyCoeffMatrix& m);

} // namespace maxrank
