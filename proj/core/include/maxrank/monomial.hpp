#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "maxrank/variables.hpp"

namespace maxrank {

// Sparse monomial: (variable, exponent) pairs sorted by variable id, no zero
// exponents. The empty monomial is 1.
class Monomial {
public:
    using Term = std::pair<VarId, std::uint32_t>;

    Monomial() = default;
    // Normalizes: sorts, merges duplicates, drops zero exponents.
    explicit Monomial(std::vector<Term> factors);

    static Monomial var(VarId v, std::uint32_t exp = 1);

    const std::vector<Term>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    std::uint64_t degree() const;
    std::uint32_t exponent(VarId v) const;
    bool multilinear() const;

    Monomial operator*(const Monomial& o) const;

    // The squarefree monomial on the same support.
    Monomial support() const;
    // this / divisor; requires divisibility.
    Monomial divide(const Monomial& divisor) const;

    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<Term> factors_;
};

// Three-way graded-lex comparison: higher total degree first; ties broken
// lexicographically with lower variable ids dominating. Returns <0 when a
// precedes b in canonical order.
int grlex_compare(const Monomial& a, const Monomial& b);

// Map comparator placing monomials in canonical (descending graded-lex)
// iteration order.
struct GrlexBefore {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return grlex_compare(a, b) < 0;
    }
};

} // namespace maxrank
