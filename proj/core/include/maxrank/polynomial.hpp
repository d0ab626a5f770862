#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "maxrank/field.hpp"
#include "maxrank/monomial.hpp"
#include "maxrank/variables.hpp"

namespace maxrank {

inline constexpr std::uint64_t kDefaultTermBudget = 1'000'000;

// Partial assignment of field residues to variables.
using Substitution = std::map<VarId, std::uint32_t>;

struct PolyStats {
    // Empty for the zero polynomial ("minus infinity" degree).
    std::optional<std::uint64_t> degree;
    std::uint64_t num_monomials = 0;
    bool is_multilinear = true;
    bool is_homogeneous = true;
};

// Sparse multivariate polynomial over GF(p). Terms are kept in canonical
// (descending graded-lex) order; no zero coefficients are stored. Values are
// immutable in spirit: all operations return new polynomials.
class Polynomial {
public:
    using TermMap = std::map<Monomial, std::uint32_t, GrlexBefore>;

    Polynomial(Field field, UniversePtr universe)
        : field_(field), universe_(std::move(universe)) {}

    static Polynomial zero(Field field, UniversePtr universe) {
        return Polynomial(field, std::move(universe));
    }
    static Polynomial constant(std::uint32_t c, Field field, UniversePtr universe);
    static Polynomial variable(VarId v, Field field, UniversePtr universe);

    const Field& field() const { return field_; }
    const UniversePtr& universe() const { return universe_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::uint64_t num_terms() const { return terms_.size(); }
    Scalar coefficient(const Monomial& m) const;

    // Adds c * m, dropping the term if the sum cancels.
    void add_term(const Monomial& m, std::uint32_t c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    // Distributive product; throws BudgetExceededError when the running term
    // count would pass `budget`.
    Polynomial mul(const Polynomial& o, std::uint64_t budget = kDefaultTermBudget) const;
    Polynomial operator*(const Polynomial& o) const { return mul(o); }
    Polynomial scale(std::uint32_t c) const;
    Polynomial pow(std::uint32_t e, std::uint64_t budget = kDefaultTermBudget) const;

    // Replaces the assigned variables by field values; unassigned variables
    // survive. Unknown ids throw UnknownVariableError.
    Polynomial substitute(const Substitution& s) const;

    // Sum of exactly the degree-d terms.
    Polynomial homogeneous_slice(std::uint64_t d) const;

    PolyStats analyze() const;

    // All variables occurring with nonzero exponent, ascending.
    std::vector<VarId> support_vars() const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    Field field_;
    UniversePtr universe_;
    TermMap terms_;
};

} // namespace maxrank
