#include "maxrank/polynomial.hpp"

#include <set>

#include "maxrank/errors.hpp"

namespace maxrank {

Polynomial Polynomial::constant(std::uint32_t c, Field field, UniversePtr universe) {
    Polynomial p(field, std::move(universe));
    p.add_term(Monomial{}, field.reduce(c));
    return p;
}

Polynomial Polynomial::variable(VarId v, Field field, UniversePtr universe) {
    if (v >= universe->size())
        throw UnknownVariableError("variable id " + std::to_string(v) +
                                   " outside universe of size " +
                                   std::to_string(universe->size()));
    Polynomial p(field, std::move(universe));
    p.add_term(Monomial::var(v), 1 % field.modulus());
    return p;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return Scalar(it == terms_.end() ? 0 : it->second, field_);
}

void Polynomial::add_term(const Monomial& m, std::uint32_t c) {
    c = field_.reduce(c);
    if (c == 0) return;
    for (const auto& [v, e] : m.factors()) {
        (void)e;
        if (v >= universe_->size())
            throw UnknownVariableError("variable id " + std::to_string(v) +
                                       " outside universe of size " +
                                       std::to_string(universe_->size()));
    }
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second = field_.add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_field(field_, o.field_, "polynomial addition");
    require_same_universe(universe_, o.universe_, "polynomial addition");
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    Polynomial r(field_, universe_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
    return r;
}

Polynomial Polynomial::mul(const Polynomial& o, std::uint64_t budget) const {
    require_same_field(field_, o.field_, "polynomial multiplication");
    require_same_universe(universe_, o.universe_, "polynomial multiplication");
    Polynomial r(field_, universe_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            r.add_term(ma * mb, field_.mul(ca, cb));
            if (r.terms_.size() > budget)
                throw BudgetExceededError(
                    "polynomial product exceeded term budget of " +
                    std::to_string(budget));
        }
    }
    return r;
}

Polynomial Polynomial::scale(std::uint32_t c) const {
    c = field_.reduce(c);
    Polynomial r(field_, universe_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) {
        std::uint32_t v = field_.mul(k, c);
        if (v != 0) r.terms_.emplace(m, v);
    }
    return r;
}

Polynomial Polynomial::pow(std::uint32_t e, std::uint64_t budget) const {
    Polynomial r = Polynomial::constant(1, field_, universe_);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) r = r.mul(base, budget);
        e >>= 1u;
        if (e > 0) base = base.mul(base, budget);
    }
    return r;
}

Polynomial Polynomial::substitute(const Substitution& s) const {
    for (const auto& [v, val] : s) {
        (void)val;
        if (v >= universe_->size())
            throw UnknownVariableError("substitution names variable id " +
                                       std::to_string(v) +
                                       " outside universe of size " +
                                       std::to_string(universe_->size()));
    }
    Polynomial r(field_, universe_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t coeff = c;
        std::vector<Monomial::Term> rest;
        for (const auto& [v, e] : m.factors()) {
            auto it = s.find(v);
            if (it == s.end()) {
                rest.emplace_back(v, e);
            } else {
                coeff = field_.mul(coeff, field_.pow(field_.reduce(it->second), e));
                if (coeff == 0) break;
            }
        }
        if (coeff != 0) r.add_term(Monomial(std::move(rest)), coeff);
    }
    return r;
}

Polynomial Polynomial::homogeneous_slice(std::uint64_t d) const {
    Polynomial r(field_, universe_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == d) r.terms_.emplace(m, c);
    return r;
}

PolyStats Polynomial::analyze() const {
    PolyStats st;
    st.num_monomials = terms_.size();
    bool first = true;
    for (const auto& [m, c] : terms_) {
        (void)c;
        std::uint64_t d = m.degree();
        if (first) {
            // Canonical order puts the highest degree first.
            st.degree = d;
            first = false;
        } else if (d != *st.degree) {
            st.is_homogeneous = false;
        }
        if (!m.multilinear()) st.is_multilinear = false;
    }
    return st;
}

std::vector<VarId> Polynomial::support_vars() const {
    std::set<VarId> seen;
    for (const auto& [m, c] : terms_) {
        (void)c;
        for (const auto& [v, e] : m.factors()) {
            (void)e;
            seen.insert(v);
        }
    }
    return {seen.begin(), seen.end()};
}

bool Polynomial::operator==(const Polynomial& o) const {
    return field_ == o.field_ && universe_->same_names(*o.universe_) &&
           terms_ == o.terms_;
}

} // namespace maxrank
