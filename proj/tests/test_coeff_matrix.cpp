#include "doctest.h"

#include <bit>
#include <cstdint>
#include <vector>

#include "maxrank/coeff_matrix.hpp"
#include "maxrank/fp_matrix.hpp"
#include "maxrank/generators.hpp"
#include "maxrank/poly_text.hpp"
#include "maxrank/rng.hpp"

using namespace maxrank;

namespace {

// Independent rank oracle for tiny matrices: the largest r with a nonzero
// r-by-r minor, determinants by Laplace expansion along the first row.
std::uint32_t det_mod(const Field& f, const std::vector<std::vector<std::uint32_t>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    std::uint32_t det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<std::uint32_t>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::uint32_t> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            sub.push_back(std::move(row));
        }
        std::uint32_t term = f.mul(m[0][j], det_mod(f, sub));
        det = j % 2 == 0 ? f.add(det, term) : f.sub(det, term);
    }
    return det;
}

std::size_t minor_rank(const Field& f, std::size_t rows, std::size_t cols,
                       const std::vector<std::uint32_t>& data) {
    const std::size_t cap = std::min(rows, cols);
    for (std::size_t r = cap; r >= 1; --r) {
        for (std::uint32_t rm = 0; rm < (1u << rows); ++rm) {
            if (std::popcount(rm) != r) continue;
            for (std::uint32_t cm = 0; cm < (1u << cols); ++cm) {
                if (std::popcount(cm) != r) continue;
                std::vector<std::vector<std::uint32_t>> sub;
                for (std::size_t i = 0; i < rows; ++i) {
                    if (!(rm >> i & 1)) continue;
                    std::vector<std::uint32_t> row;
                    for (std::size_t j = 0; j < cols; ++j)
                        if (cm >> j & 1) row.push_back(data[i * cols + j]);
                    sub.push_back(std::move(row));
                }
                if (det_mod(f, sub) != 0) return r;
            }
        }
    }
    return 0;
}

// y1*z1 + y1^2*z1 + y1*z1*z2 + z1 over GF(2); three nonzero cells, one of
// them a genuine polynomial entry.
PolyCoeffMatrix running_example() {
    Polynomial f = parse_polynomial("y1*z1 + y1^2*z1 + y1*z1*z2 + z1", Field(2),
                                    yz_universe(1, 2));
    return PolyCoeffMatrix::build(f, YzSplit::by_prefix(yz_universe(1, 2)));
}

} // namespace

TEST_SUITE_BEGIN("coeff_matrix");

TEST_CASE("gaussian rank matches the minor expansion oracle") {
    for (std::uint32_t p : {2u, 3u, 101u}) {
        Field f(p);
        Rng rng(derive_seed(7, p));
        for (int i = 0; i < 20; ++i) {
            std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(5);
            std::vector<std::uint32_t> data(rows * cols);
            for (auto& v : data) v = std::uint32_t(rng.below(p));
            CHECK(fp_rank(f, rows, cols, data) == minor_rank(f, rows, cols, data));
        }
    }
    CHECK_THROWS_AS(fp_rank(Field(2), 2, 2, {1, 0, 1}), InputError);
}

TEST_CASE("span coordinates reconstruct every inserted vector") {
    Field f(5);
    Rng rng(31);
    FpSpan span(f, 4);
    std::vector<std::vector<std::uint32_t>> basis_vecs;
    std::size_t expected_rank = 0;
    for (int i = 0; i < 12; ++i) {
        std::vector<std::uint32_t> v(4);
        for (auto& x : v) x = std::uint32_t(rng.below(5));
        FpSpan::InsertResult res = span.insert(v);
        if (res.added) {
            basis_vecs.push_back(v);
            ++expected_rank;
        }
        CHECK(span.rank() == expected_rank);
        REQUIRE(res.coords.size() == basis_vecs.size());
        std::vector<std::uint32_t> back(4, 0);
        for (std::size_t j = 0; j < basis_vecs.size(); ++j)
            for (std::size_t c = 0; c < 4; ++c)
                back[c] = f.add(back[c], f.mul(res.coords[j], basis_vecs[j][c]));
        CHECK(back == v);
    }
    CHECK(span.rank() <= 4);
    CHECK(span.basis_inserts().size() == span.rank());
}

TEST_CASE("cells group monomials by exact support pair") {
    PolyCoeffMatrix m = running_example();
    auto u = m.split().universe();
    Field f(2);

    CHECK(m.row_masks() == std::vector<std::uint64_t>{0, 1});
    CHECK(m.col_masks() == std::vector<std::uint64_t>{1, 3});
    CHECK(m.entries().size() == 3);

    CHECK(m.entry(0, 1) == Polynomial::constant(1, f, u));
    CHECK(m.entry(1, 1) == parse_polynomial("y1 + 1", f, u));
    CHECK(m.entry(1, 3) == Polynomial::constant(1, f, u));
    CHECK(m.entry(0, 3).is_zero()); // empty cell

    CHECK(to_text(m.support_monomial(Side::Y, 1), *u) == "y1");
    CHECK(to_text(m.support_monomial(Side::Z, 3), *u) == "z1*z2");
    CHECK(m.entry_variables() == std::vector<VarId>{u->require("y1")});
}

TEST_CASE("entries use only variables of their own supports") {
    auto u = yz_universe(3, 3);
    Field f(3);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        RandomPolyParams prm;
        prm.terms = 8;
        prm.max_degree = 4;
        Polynomial p = random_polynomial(u, f, prm, derive_seed(55, seed));
        PolyCoeffMatrix m = PolyCoeffMatrix::build(p, YzSplit::by_prefix(u));
        for (const auto& [key, e] : m.entries()) {
            Monomial cell = m.support_monomial(Side::Y, key.first) *
                            m.support_monomial(Side::Z, key.second);
            for (VarId v : e.support_vars()) CHECK(cell.exponent(v) == 1);
        }
    }
}

TEST_CASE("reconstruction returns the source polynomial") {
    auto u = yz_universe(3, 3);
    Field f(101);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        RandomPolyParams prm;
        prm.terms = 10;
        prm.max_degree = 5;
        Polynomial p = random_polynomial(u, f, prm, derive_seed(56, seed));
        CHECK(PolyCoeffMatrix::build(p, YzSplit::by_prefix(u)).reconstruct() == p);
    }
}

TEST_CASE("exhaustive search on the running example") {
    PolyCoeffMatrix m = running_example();
    MaxrankResult res = maxrank::maxrank(m);
    CHECK(res.value == 2);
    CHECK(res.exact);
    CHECK(res.matrix_rows == 2);
    CHECK(res.matrix_cols == 2);
    // y1 = 0 already gives full rank, so the scan saturates immediately.
    CHECK(res.substitutions_tried == 1);
    REQUIRE(res.witness.size() == 1);
    CHECK(res.witness.begin()->second == 0);

    // The witness really attains the value.
    CHECK(m.substitute(res.witness).rank() == res.value);
}

TEST_CASE("csv export of the running example") {
    CHECK(to_csv(running_example()) ==
          "y_support,z_support,entry\n"
          "1,z1,1\n"
          "y1,z1,y1 + 1\n"
          "y1,z1*z2,1\n");
}

TEST_CASE("square of a sum over GF(3)") {
    // (y1 + z1)^2 = y1^2 + 2*y1*z1 + z1^2.  The square terms leave degree-1
    // quotients behind, so both variables survive into the entries:
    //     [[0,  z1],
    //      [y1, 2 ]]
    // with determinant -y1*z1, so rank 2 exactly when y1 != 0 and z1 != 0.
    auto u = yz_universe(1, 1);
    Polynomial f = parse_polynomial("y1 + z1", Field(3), u).pow(2);
    PolyCoeffMatrix m = PolyCoeffMatrix::build(f, YzSplit::by_prefix(u));
    CHECK(m.entry_variables().size() == 2);
    MaxrankResult res = maxrank::maxrank(m);
    CHECK(res.value == 2);
    CHECK(res.exact);
    // Odometer order over GF(3)^2 reaches the first all-nonzero point,
    // (1, 1), on the fifth assignment.
    CHECK(res.substitutions_tried == 5);
    CHECK(m.substitute(res.witness).rank() == 2);
}

TEST_CASE("partial derivative matrix for multilinear input") {
    auto u = yz_universe(2, 2);
    Field f(3);
    Polynomial p = parse_polynomial("y1*z1 + 2*y1*y2*z2 + z1*z2", f, u);
    PolyCoeffMatrix a = PolyCoeffMatrix::build(p, YzSplit::by_prefix(u));
    PolyCoeffMatrix b = PolyCoeffMatrix::build_partial_derivatives(p, YzSplit::by_prefix(u));
    CHECK(a.entries() == b.entries());

    Polynomial bad = parse_polynomial("y1^2*z1", f, u);
    CHECK_THROWS_AS(PolyCoeffMatrix::build_partial_derivatives(bad, YzSplit::by_prefix(u)),
                    InputError);
}

TEST_CASE("sampling never beats the exhaustive maximum") {
    auto u = yz_universe(2, 2);
    Field f(3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RandomPolyParams prm;
        prm.terms = 7;
        prm.max_degree = 3;
        Polynomial p = random_polynomial(u, f, prm, derive_seed(91, seed));
        PolyCoeffMatrix m = PolyCoeffMatrix::build(p, YzSplit::by_prefix(u));

        MaxrankOptions ex;
        MaxrankResult full = maxrank::maxrank(m, ex);

        MaxrankOptions sm;
        sm.mode = MaxrankMode::Sampled;
        sm.seed = seed;
        sm.trials = 25;
        MaxrankResult sampled = maxrank::maxrank(m, sm);
        CHECK(sampled.value <= full.value);
        CHECK(m.substitute(sampled.witness).rank() == sampled.value);
    }
}

TEST_CASE("results are deterministic and job-count independent") {
    Polynomial f = parse_polynomial(
        "y1*z1 + y1*y2*z2 + y2*z1*z2 + y1^2*z2 + z1", Field(3), yz_universe(2, 2));
    PolyCoeffMatrix m = PolyCoeffMatrix::build(f, YzSplit::by_prefix(yz_universe(2, 2)));

    MaxrankOptions one;
    MaxrankResult a = maxrank::maxrank(m, one);
    MaxrankResult b = maxrank::maxrank(m, one);
    CHECK(a.value == b.value);
    CHECK(a.witness == b.witness);
    CHECK(a.substitutions_tried == b.substitutions_tried);

    // The value and witness are job-count independent.  substitutions_tried
    // is not: when the scan saturates early, each worker stops its own chunk,
    // so the combined count depends on how the range was split.
    MaxrankOptions four = one;
    four.jobs = 4;
    MaxrankResult c = maxrank::maxrank(m, four);
    CHECK(a.value == c.value);
    CHECK(a.witness == c.witness);
    CHECK(a.exact == c.exact);
}

TEST_CASE("resource limits") {
    // Five entry variables over GF(3): 243 substitutions, above a budget of 100.
    auto u = yz_universe(3, 3);
    Polynomial f = parse_polynomial(
        "y1^2*y2*y3*z1 + y1*y2^2*z1*z2 + y2*y3^2*z2*z3 + y1*z1*z2^2 + y3*z3^2",
        Field(3), u);
    PolyCoeffMatrix m = PolyCoeffMatrix::build(f, YzSplit::by_prefix(u));
    REQUIRE(m.entry_variables().size() == 5);

    MaxrankOptions tight;
    tight.budget = 100;
    CHECK_THROWS_AS(maxrank::maxrank(m, tight), BudgetExceededError);

    MaxrankOptions narrow;
    narrow.rank_limit = 1;
    CHECK_THROWS_AS(maxrank::maxrank(m, narrow), DimensionLimitError);

    ScalarMatrix sm(Field(2), {0, 1}, {0, 1}, {1, 0, 0, 1});
    CHECK_THROWS_AS(sm.rank(1), DimensionLimitError);
    CHECK(sm.rank() == 2);
}

TEST_CASE("zero polynomial gives an empty matrix") {
    auto u = yz_universe(1, 1);
    PolyCoeffMatrix m =
        PolyCoeffMatrix::build(Polynomial::zero(Field(2), u), YzSplit::by_prefix(u));
    CHECK(m.entries().empty());
    MaxrankResult res = maxrank::maxrank(m);
    CHECK(res.value == 0);
    CHECK(res.exact);
}

TEST_SUITE_END();
