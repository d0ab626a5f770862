#include "doctest.h"

#include <cstdint>
#include <string>

#include "maxrank/circuit.hpp"
#include "maxrank/circuit_json.hpp"
#include "maxrank/generators.hpp"
#include "maxrank/poly_text.hpp"

using namespace maxrank;

namespace {

// (y1 + z1) * (y2 + z2)
Formula two_factor_formula(Field f) {
    Formula g(f, yz_universe(2, 2));
    auto y1 = g.add_var(0), y2 = g.add_var(1);
    auto z1 = g.add_var(2), z2 = g.add_var(3);
    auto l = g.add_plus(y1, z1);
    auto r = g.add_plus(y2, z2);
    g.add_times(l, r);
    return g;
}

} // namespace

TEST_SUITE_BEGIN("circuit");

TEST_CASE("formula expansion") {
    Field f(7);
    Formula g = two_factor_formula(f);
    g.validate();
    CHECK(g.size() == 7);
    CHECK(g.root() == 6);
    CHECK(g.expand() ==
          parse_polynomial("y1*y2 + y1*z2 + y2*z1 + z1*z2", f, g.universe()));

    // Intermediate nodes carry their own polynomials.
    CHECK(g.expand_node(4) == parse_polynomial("y1 + z1", f, g.universe()));
    auto all = g.expand_all();
    REQUIRE(all.size() == g.size());
    for (std::uint32_t id = 0; id < g.size(); ++id)
        CHECK(all[id] == g.expand_node(id));
}

TEST_CASE("tree invariants are enforced") {
    Field f(5);
    Formula g(f, yz_universe(1, 1));
    auto a = g.add_var(0);
    auto b = g.add_var(1);
    g.add_plus(a, b);
    // Both leaves already feed the plus gate.
    CHECK_THROWS_AS(g.add_times(a, b), InputError);
    CHECK_NOTHROW(g.validate());

    Formula two_roots(f, yz_universe(1, 1));
    two_roots.add_var(0);
    two_roots.add_var(1);
    CHECK_THROWS_AS(two_roots.root(), InputError);
    CHECK_THROWS_AS(two_roots.validate(), InputError);

    Formula empty(f, yz_universe(1, 1));
    CHECK_THROWS_AS(empty.validate(), InputError);
    CHECK_THROWS_AS(g.add_var(9), UnknownVariableError);
    CHECK_THROWS_AS(g.add_plus(0, 99), InputError);
}

TEST_CASE("univariate leaves") {
    Field f(5);
    Formula g(f, yz_universe(1, 0));
    // u(y1) = 1 + 2*y1^2
    auto u = g.add_upoly(0, {1, 0, 2});
    (void)u;
    CHECK(g.expand() == parse_polynomial("2*y1^2 + 1", f, g.universe()));

    Formula bad(f, yz_universe(1, 0));
    CHECK_THROWS_AS(bad.add_upoly(0, {3}), InputError);    // constant
    CHECK_THROWS_AS(bad.add_upoly(0, {1, 0}), InputError); // trailing zero only
    CHECK_THROWS_AS(bad.add_upoly(0, {0, 5}), InputError); // 5 = 0 in GF(5)
    CHECK(bad.add_upoly(0, {0, 2}) == 0);
}

TEST_CASE("constants are reduced into the field") {
    Field f(5);
    Formula g(f, yz_universe(1, 1));
    auto c = g.add_const(12);
    CHECK(g.node(c).constant == 2);
    CHECK(g.expand() == Polynomial::constant(2, f, g.universe()));
}

TEST_CASE("preprocessing keeps the shape and swaps leaves") {
    Field f(5);
    Formula g = two_factor_formula(f);
    Formula h = preprocess(g, 17, 3);
    REQUIRE(h.size() == g.size());
    for (std::uint32_t id = 0; id < g.size(); ++id) {
        const auto& before = g.node(id);
        const auto& after = h.node(id);
        if (before.kind == Formula::Kind::Var) {
            CHECK(after.kind == Formula::Kind::UPoly);
            CHECK(after.var == before.var);
            CHECK(after.coeffs.size() <= 4); // degree <= max_degree
            bool nonconstant = false;
            for (std::size_t i = 1; i < after.coeffs.size(); ++i)
                nonconstant |= after.coeffs[i] != 0;
            CHECK(nonconstant);
        } else {
            CHECK(after.kind == before.kind);
            CHECK(after.left == before.left);
            CHECK(after.right == before.right);
        }
    }
    // Deterministic in the seed.
    Formula h2 = preprocess(g, 17, 3);
    CHECK(circuit_to_json(h) == circuit_to_json(h2));
    CHECK_THROWS_AS(preprocess(g, 17, 0), InputError);
}

TEST_CASE("depth-three circuits expand gate by gate") {
    Field f(7);
    SigmaPiSigma c(f, yz_universe(2, 2));
    AffineForm a;
    a.linear = {{0, 1}, {2, 1}}; // y1 + z1
    AffineForm b;
    b.linear = {{1, 1}, {3, 1}}; // y2 + z2
    AffineForm d;
    d.constant = 3;
    d.linear = {{0, 2}}; // 3 + 2 y1
    c.gates = {{a, b}, {d}};
    c.validate();
    CHECK(c.top_fanin() == 2);
    CHECK(c.max_gate_fanin() == 2);
    CHECK_FALSE(c.homogeneous());
    CHECK(c.expand() == parse_polynomial("y1*y2 + y1*z2 + y2*z1 + z1*z2 + 2*y1 + 3",
                                         f, c.universe));

    SigmaPiSigma hom(f, yz_universe(2, 2));
    hom.gates = {{a, b}};
    CHECK(hom.homogeneous());

    SigmaPiSigma bad(f, yz_universe(1, 1));
    AffineForm out;
    out.linear = {{9, 1}};
    bad.gates = {{out}};
    CHECK_THROWS_AS(bad.validate(), UnknownVariableError);
    SigmaPiSigma none(f, yz_universe(1, 1));
    CHECK_THROWS_AS(none.validate(), InputError);
}

TEST_CASE("affine form helpers") {
    AffineForm a;
    CHECK(a.is_zero());
    a.constant = 2;
    a.linear = {{1, 3}};
    CHECK_FALSE(a.homogeneous());
    CHECK(a.coordinates(3) == std::vector<std::uint32_t>{2, 0, 3, 0});
    Field f(5);
    CHECK(a.to_polynomial(f, yz_universe(2, 1)) ==
          parse_polynomial("3*y2 + 2", f, yz_universe(2, 1)));
}

TEST_CASE("branching program evaluation and segments") {
    Field f(5);
    Abp abp = gen_inner_product_abp(2, f);
    abp.validate();
    CHECK(abp.depth() == 2);
    CHECK(abp.homogeneous());
    CHECK(abp.expand() == parse_polynomial("y1*z1 + y2*z2", f, abp.universe));

    // Source-to-v times v-to-sink, summed over the middle level, recovers f.
    Polynomial sum = Polynomial::zero(f, abp.universe);
    for (std::uint32_t v : abp.levels[1])
        sum = sum + abp_segment_poly(abp, abp.source(), v) *
                        abp_segment_poly(abp, v, abp.sink());
    CHECK(sum == abp.expand());

    CHECK(abp_segment_poly(abp, abp.source(), abp.source()) ==
          Polynomial::constant(1, f, abp.universe));
    CHECK_THROWS_AS(abp_segment_poly(abp, abp.sink(), abp.source()), InputError);
}

TEST_CASE("branching program validation") {
    Field f(3);
    auto u = yz_universe(1, 1);

    Abp skip(f, u);
    skip.levels = {{0}, {1}, {2}};
    AffineForm w;
    w.linear = {{0, 1}};
    skip.edges = {{0, 2, w}}; // jumps over level 1
    CHECK_THROWS_AS(skip.validate(), InputError);

    Abp wide(f, u);
    wide.levels = {{0, 1}, {2}};
    wide.edges = {{0, 2, w}};
    CHECK_THROWS_AS(wide.validate(), InputError); // two sources

    Abp shallow(f, u);
    shallow.levels = {{0}};
    CHECK_THROWS_AS(shallow.validate(), InputError);
}

TEST_CASE("formula json round trip") {
    Field f(5);
    Formula g = two_factor_formula(f);
    std::string text = circuit_to_json(g);
    Circuit c = circuit_from_json(text);
    REQUIRE(std::holds_alternative<Formula>(c));
    CHECK(circuit_to_json(c) == text);
    CHECK(circuit_expand(c) == g.expand());
    CHECK(std::string(circuit_kind(c)) == "formula");
    CHECK(circuit_field(c) == f);
}

TEST_CASE("depth-three and branching program json round trips") {
    Field f(7);
    SigmaPiSigma c(f, yz_universe(1, 1));
    AffineForm a;
    a.constant = 1;
    a.linear = {{0, 2}, {1, 3}};
    c.gates = {{a, a}};
    std::string text = circuit_to_json(c);
    Circuit back = circuit_from_json(text);
    REQUIRE(std::holds_alternative<SigmaPiSigma>(back));
    CHECK(circuit_to_json(back) == text);
    CHECK(circuit_expand(back) == c.expand());

    Abp abp = gen_inner_product_abp(3, f);
    std::string abp_text = circuit_to_json(abp);
    Circuit abp_back = circuit_from_json(abp_text);
    REQUIRE(std::holds_alternative<Abp>(abp_back));
    CHECK(circuit_to_json(abp_back) == abp_text);
    CHECK(circuit_expand(abp_back) == abp.expand());
}

TEST_CASE("json field selection and validation") {
    std::string no_field = R"({"kind": "formula", "root": {"var": "y1"}})";
    CHECK_THROWS_AS(circuit_from_json(no_field), InputError);
    Circuit c = circuit_from_json(no_field, Field(3));
    CHECK(circuit_field(c).modulus() == 3);

    // An explicit "field" key wins over the fallback.
    std::string with_field =
        R"({"kind": "formula", "field": 5, "root": {"var": "y1"}})";
    CHECK(circuit_field(circuit_from_json(with_field, Field(3))).modulus() == 5);

    CHECK_THROWS_AS(circuit_from_json(R"({"kind": "maze", "field": 3})"),
                    InputError);
    CHECK_THROWS_AS(circuit_from_json("[1, 2]", Field(3)), InputError);
    CHECK_THROWS_AS(circuit_from_json("{", Field(3)), ParseError);
}

TEST_CASE("vars key pins the universe order") {
    std::string text = R"({
        "kind": "formula", "field": 3, "vars": ["z9", "a", "y1"],
        "root": {"op": "+", "l": {"var": "y1"}, "r": {"var": "a"}}
    })";
    Circuit c = circuit_from_json(text);
    CHECK(circuit_universe(c)->names() ==
          std::vector<std::string>{"z9", "a", "y1"});

    // Without "vars", names intern in encounter order.
    std::string loose = R"({
        "kind": "formula", "field": 3,
        "root": {"op": "+", "l": {"var": "b"}, "r": {"var": "a"}}
    })";
    CHECK(circuit_universe(circuit_from_json(loose))->names() ==
          std::vector<std::string>{"b", "a"});

    // A var outside the pinned universe is rejected.
    std::string bad = R"({
        "kind": "formula", "field": 3, "vars": ["x1"],
        "root": {"var": "x2"}
    })";
    CHECK_THROWS_AS(circuit_from_json(bad), InputError);
}

TEST_SUITE_END();
