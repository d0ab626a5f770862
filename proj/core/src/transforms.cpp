#include "maxrank/transforms.hpp"

#include <algorithm>

#include "maxrank/errors.hpp"
#include "maxrank/fp_matrix.hpp"
#include "maxrank/generators.hpp"

namespace maxrank {

namespace {

std::uint64_t factorial(std::uint32_t d) {
    std::uint64_t f = 1;
    for (std::uint32_t i = 2; i <= d; ++i) f *= i;
    return f;
}

AffineForm add_forms(const Field& field, const AffineForm& a, const AffineForm& b) {
    AffineForm s = a;
    s.constant = field.add(s.constant, b.constant);
    for (const auto& [v, c] : b.linear) {
        std::uint32_t next = field.add(s.linear.count(v) ? s.linear[v] : 0, c);
        if (next == 0)
            s.linear.erase(v);
        else
            s.linear[v] = next;
    }
    return s;
}

AffineForm scale_form(const Field& field, const AffineForm& a, std::uint32_t c) {
    AffineForm s;
    if (c == 0) return s;
    s.constant = field.mul(a.constant, c);
    for (const auto& [v, k] : a.linear) {
        std::uint32_t next = field.mul(k, c);
        if (next != 0) s.linear[v] = next;
    }
    return s;
}

} // namespace

Polynomial PowerSumForm::expand(std::uint64_t budget) const {
    Polynomial sum(field, universe);
    for (const auto& t : terms)
        sum = sum +
              t.form.to_polynomial(field, universe).pow(exponent, budget).scale(t.coeff);
    return sum;
}

PowerSumForm fischer_decompose(const std::vector<AffineForm>& forms, Field field,
                               UniversePtr universe, std::uint64_t budget) {
    const std::size_t d = forms.size();
    if (d == 0) throw InputError("cannot decompose an empty product");
    if (d > 62) throw DimensionLimitError("subset sums over more than 62 forms");
    if (field.modulus() <= d)
        throw CharacteristicError("the decomposition divides by " + std::to_string(d) +
                                  "!, which needs a modulus above " +
                                  std::to_string(d));
    const std::uint32_t inv_dfact =
        field.inv(static_cast<std::uint32_t>(factorial(static_cast<std::uint32_t>(d)) %
                                             field.modulus()));

    PowerSumForm result(field, universe);
    result.exponent = static_cast<std::uint32_t>(d);
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << d); ++mask) {
        AffineForm sum;
        for (std::size_t u = 0; u < d; ++u)
            if (mask & (std::uint64_t(1) << u)) sum = add_forms(field, sum, forms[u]);
        if (sum.is_zero()) continue;
        const std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
        std::uint32_t coeff = inv_dfact;
        if ((d - size) % 2 == 1) coeff = field.neg(coeff);
        result.terms.push_back({coeff, std::move(sum)});
    }

    Polynomial product = Polynomial::constant(1, field, universe);
    for (const auto& f : forms)
        product = product.mul(f.to_polynomial(field, universe), budget);
    if (result.expand(budget) != product)
        throw Error("power sum decomposition failed its self-check");
    return result;
}

Polynomial gate_degree_slice(const std::vector<AffineForm>& forms, std::uint32_t d,
                             Field field, const UniversePtr& universe) {
    // slice[e] holds the degree-e part of the running product; degrees above
    // d never materialize.
    std::vector<Polynomial> slice(d + 1, Polynomial::zero(field, universe));
    slice[0] = Polynomial::constant(1, field, universe);
    for (const auto& f : forms) {
        AffineForm lin = f;
        lin.constant = 0;
        Polynomial linear = lin.to_polynomial(field, universe);
        for (std::uint32_t e = d; e-- > 0;) {
            // slice[e+1] gains slice[e] * linear; slice[e] scales by the constant.
            slice[e + 1] = slice[e + 1].scale(f.constant) + slice[e] * linear;
        }
        slice[0] = slice[0].scale(f.constant);
    }
    return slice[d];
}

FormBasis linear_basis(const std::vector<AffineForm>& forms, Field field,
                       std::size_t universe_size) {
    FpSpan span(field, universe_size + 1);
    FormBasis out;
    for (const auto& f : forms) {
        auto res = span.insert(f.coordinates(universe_size));
        out.coords.push_back(std::move(res.coords));
    }
    out.basis = span.basis_inserts();
    for (auto& row : out.coords) row.resize(out.basis.size(), 0);
    return out;
}

namespace {

// All vectors in Z^r with nonnegative entries summing to exactly `total`,
// in lexicographic order.
void exact_sum_vectors(std::size_t r, std::uint32_t total,
                       std::vector<std::uint32_t>& current,
                       std::vector<std::vector<std::uint32_t>>& out) {
    if (current.size() + 1 == r) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (std::uint32_t v = 0; v <= total; ++v) {
        current.push_back(v);
        exact_sum_vectors(r, total - v, current, out);
        current.pop_back();
    }
}

std::vector<std::vector<std::uint32_t>> vectors_with_sum(std::size_t r,
                                                         std::uint32_t total) {
    std::vector<std::vector<std::uint32_t>> out;
    if (r == 0) return out;
    std::vector<std::uint32_t> current;
    exact_sum_vectors(r, total, current, out);
    return out;
}

std::uint64_t multinomial(std::uint32_t d, const std::vector<std::uint32_t>& alpha) {
    std::uint64_t c = factorial(d);
    for (std::uint32_t a : alpha) c /= factorial(a);
    return c;
}

} // namespace

PowerSumForm sum_of_powers_rewrite(const std::vector<AffineForm>& gate,
                                   std::uint32_t d, Field field,
                                   UniversePtr universe, std::uint64_t budget) {
    if (d == 0) throw InputError("rewrite needs degree d >= 1");
    if (d >= 21) throw DimensionLimitError("factorials overflow beyond degree 20");
    if (field.modulus() <= d)
        throw CharacteristicError("the rewrite needs a modulus above " +
                                  std::to_string(d));

    // Basis of the homogeneous parts.
    std::vector<AffineForm> parts;
    parts.reserve(gate.size());
    for (const auto& f : gate) {
        AffineForm lin = f;
        lin.constant = 0;
        parts.push_back(std::move(lin));
    }
    FormBasis fb = linear_basis(parts, field, universe->size());
    const std::size_t r = fb.basis.size();

    PowerSumForm result(field, universe);
    result.exponent = d;
    Polynomial target = gate_degree_slice(gate, d, field, universe);
    if (target.is_zero()) {
        if (!result.expand(budget).is_zero())
            throw Error("power sum rewrite failed its self-check");
        return result;
    }

    if (binomial(d + r, r) > 200000)
        throw ResourceError("power sum rewrite would enumerate too many combinations");

    // The slice, as a polynomial in auxiliary variables standing for the
    // basis forms.
    UniversePtr aux = indexed_universe("w", r);
    std::vector<AffineForm> aux_gate;
    for (std::size_t j = 0; j < gate.size(); ++j) {
        AffineForm g;
        g.constant = gate[j].constant;
        for (std::size_t i = 0; i < r; ++i)
            if (fb.coords[j][i] != 0)
                g.linear[static_cast<VarId>(i)] = fb.coords[j][i];
        aux_gate.push_back(std::move(g));
    }
    Polynomial aux_slice = gate_degree_slice(aux_gate, d, field, aux);

    // Coefficient vector of the slice over the degree-d monomials in the
    // auxiliary variables, in a fixed enumeration order.
    auto monomials = vectors_with_sum(r, d);
    std::map<std::vector<std::uint32_t>, std::size_t> monomial_index;
    for (std::size_t i = 0; i < monomials.size(); ++i)
        monomial_index[monomials[i]] = i;
    auto poly_coords = [&](const Polynomial& p) {
        std::vector<std::uint32_t> vec(monomials.size(), 0);
        for (const auto& [m, c] : p.terms()) {
            std::vector<std::uint32_t> alpha(r, 0);
            for (const auto& [v, e] : m.factors()) alpha[v] = e;
            vec[monomial_index.at(alpha)] = c;
        }
        return vec;
    };

    // Candidate powers (gamma . w)^d for every nonzero gamma with sum <= d,
    // fed to a span so the slice comes back expressed over a greedy subset.
    std::vector<std::vector<std::uint32_t>> gammas;
    for (std::uint32_t total = 1; total <= d; ++total)
        for (auto& g : vectors_with_sum(r, total)) gammas.push_back(std::move(g));

    FpSpan span(field, monomials.size());
    std::vector<std::size_t> inserted_gamma; // basis insert -> gamma index
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
        std::vector<std::uint32_t> power(monomials.size(), 0);
        for (std::size_t mi = 0; mi < monomials.size(); ++mi) {
            std::uint64_t value = multinomial(d, monomials[mi]) % field.modulus();
            for (std::size_t i = 0; i < r; ++i)
                value = (value *
                         field.pow(field.reduce(gammas[gi][i]), monomials[mi][i])) %
                        field.modulus();
            power[mi] = static_cast<std::uint32_t>(value);
        }
        if (span.insert(power).added) inserted_gamma.push_back(gi);
    }
    auto res = span.insert(poly_coords(aux_slice));
    if (res.added)
        throw Error("degree slice escaped the span of the candidate powers");

    for (std::size_t k = 0; k < res.coords.size(); ++k) {
        if (res.coords[k] == 0) continue;
        const auto& gamma = gammas[inserted_gamma[k]];
        AffineForm combo;
        for (std::size_t i = 0; i < r; ++i) {
            if (gamma[i] == 0) continue;
            combo = add_forms(field, combo,
                              scale_form(field, parts[fb.basis[i]],
                                         field.reduce(gamma[i])));
        }
        result.terms.push_back({res.coords[k], std::move(combo)});
    }

    if (result.expand(budget) != target)
        throw Error("power sum rewrite failed its self-check");
    return result;
}

} // namespace maxrank
