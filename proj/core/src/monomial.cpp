#include "maxrank/monomial.hpp"

#include <algorithm>

#include "maxrank/errors.hpp"

namespace maxrank {

Monomial::Monomial(std::vector<Term> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
    std::vector<Term> merged;
    for (const auto& [v, e] : factors_) {
        if (e == 0) continue;
        if (!merged.empty() && merged.back().first == v)
            merged.back().second += e;
        else
            merged.emplace_back(v, e);
    }
    factors_ = std::move(merged);
}

Monomial Monomial::var(VarId v, std::uint32_t exp) {
    Monomial m;
    if (exp > 0) m.factors_.emplace_back(v, exp);
    return m;
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (const auto& [v, e] : factors_) d += e;
    return d;
}

std::uint32_t Monomial::exponent(VarId v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Term& t, VarId x) { return t.first < x; });
    return (it != factors_.end() && it->first == v) ? it->second : 0;
}

bool Monomial::multilinear() const {
    for (const auto& [v, e] : factors_)
        if (e > 1) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    auto a = factors_.begin(), ae = factors_.end();
    auto b = o.factors_.begin(), be = o.factors_.end();
    while (a != ae && b != be) {
        if (a->first < b->first)
            r.factors_.push_back(*a++);
        else if (b->first < a->first)
            r.factors_.push_back(*b++);
        else {
            r.factors_.emplace_back(a->first, a->second + b->second);
            ++a, ++b;
        }
    }
    r.factors_.insert(r.factors_.end(), a, ae);
    r.factors_.insert(r.factors_.end(), b, be);
    return r;
}

Monomial Monomial::support() const {
    Monomial r;
    r.factors_.reserve(factors_.size());
    for (const auto& [v, e] : factors_) r.factors_.emplace_back(v, 1);
    return r;
}

Monomial Monomial::divide(const Monomial& divisor) const {
    Monomial r;
    auto d = divisor.factors_.begin(), de = divisor.factors_.end();
    for (const auto& [v, e] : factors_) {
        if (d != de && d->first == v) {
            if (d->second > e)
                throw InputError("monomial division is not exact");
            if (e > d->second) r.factors_.emplace_back(v, e - d->second);
            ++d;
        } else {
            r.factors_.emplace_back(v, e);
        }
    }
    if (d != de) throw InputError("monomial division is not exact");
    return r;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
    const std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da > db ? -1 : 1;
    auto x = a.factors().begin(), xe = a.factors().end();
    auto y = b.factors().begin(), ye = b.factors().end();
    while (x != xe && y != ye) {
        if (x->first != y->first) return x->first < y->first ? -1 : 1;
        if (x->second != y->second) return x->second > y->second ? -1 : 1;
        ++x, ++y;
    }
    if (x != xe) return -1;
    if (y != ye) return 1;
    return 0;
}

} // namespace maxrank
