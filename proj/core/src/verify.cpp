#include "maxrank/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <utility>

#include "maxrank/circuit.hpp"
#include "maxrank/circuit_analysis.hpp"
#include "maxrank/errors.hpp"
#include "maxrank/generators.hpp"
#include "maxrank/poly_text.hpp"
#include "maxrank/rng.hpp"
#include "maxrank/transforms.hpp"

namespace maxrank {
namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    std::uint64_t ms() const {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count());
    }
};

MaxrankOptions exhaustive_options(const CheckConfig& config) {
    MaxrankOptions o;
    o.mode = MaxrankMode::Exhaustive;
    o.budget = config.budget;
    o.rank_limit = config.rank_limit;
    o.jobs = config.jobs;
    return o;
}

MaxrankResult exhaustive_maxrank(const Polynomial& f, const YzSplit& split,
                                 const CheckConfig& config) {
    return maxrank(PolyCoeffMatrix::build(f, split), exhaustive_options(config));
}

VerdictReport make_report(std::string claim, const Field& field,
                          const CheckConfig& config,
                          std::vector<std::pair<std::string, std::string>> params,
                          std::string measured, std::string bound, bool holds,
                          std::string witness, std::uint64_t ms) {
    VerdictReport r;
    r.claim = std::move(claim);
    r.params = std::move(params);
    r.measured = std::move(measured);
    r.bound = std::move(bound);
    r.holds = holds;
    r.field_modulus = field.modulus();
    r.seed = config.seed;
    r.witness = std::move(witness);
    r.runtime_ms = ms;
    return r;
}

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < exp; ++i) v *= base;
    return v;
}

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Short canonical rendering of f for witness strings.
std::string poly_head(const Polynomial& f) {
    std::string t = to_text(f);
    if (t.size() > 120) {
        t.resize(117);
        t += "...";
    }
    return t;
}

// Random polynomial supported on the given variables only.
Polynomial random_poly_on(const UniversePtr& universe, const Field& field,
                          const std::vector<VarId>& vars, Rng& rng,
                          std::size_t terms, std::uint32_t max_degree,
                          bool allow_constant) {
    Polynomial f = Polynomial::zero(field, universe);
    for (std::size_t t = 0; t < terms; ++t) {
        std::uint32_t lo = allow_constant ? 0 : 1;
        std::uint32_t deg =
            static_cast<std::uint32_t>(rng.range(lo, max_degree));
        Monomial m;
        for (std::uint32_t i = 0; i < deg; ++i)
            m = m * Monomial::var(vars[rng.below(vars.size())]);
        std::uint32_t c =
            field.modulus() == 2
                ? 1u
                : static_cast<std::uint32_t>(rng.range(1, field.modulus() - 1));
        f.add_term(m, c);
    }
    return f;
}

// Random affine form as a polynomial, over all variables of the universe.
Polynomial random_affine_poly(const UniversePtr& universe, const Field& field,
                              Rng& rng) {
    Polynomial f = Polynomial::zero(field, universe);
    f.add_term(Monomial(), static_cast<std::uint32_t>(rng.below(field.modulus())));
    for (VarId v = 0; v < universe->size(); ++v)
        f.add_term(Monomial::var(v),
                   static_cast<std::uint32_t>(rng.below(field.modulus())));
    return f;
}

bool matrix_sum_matches(const PolyCoeffMatrix& mf, const PolyCoeffMatrix& mg,
                        const PolyCoeffMatrix& msum) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> keys;
    for (const auto& [k, v] : mf.entries()) keys.insert(k);
    for (const auto& [k, v] : mg.entries()) keys.insert(k);
    for (const auto& [k, v] : msum.entries()) keys.insert(k);
    for (const auto& k : keys) {
        if (!(mf.entry(k.first, k.second) + mg.entry(k.first, k.second) ==
              msum.entry(k.first, k.second)))
            return false;
    }
    return true;
}

std::vector<std::uint64_t> subtree_sizes(const Formula& f) {
    std::vector<std::uint64_t> sz(f.size(), 1);
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        if (!f.is_leaf(i))
            sz[i] = 1 + sz[f.node(i).left] + sz[f.node(i).right];
    }
    return sz;
}

struct SuiteTally {
    std::uint64_t instances = 0;
    std::uint64_t violations = 0;
    std::string witness;

    void record(bool ok, const std::function<std::string()>& describe) {
        ++instances;
        if (!ok) {
            ++violations;
            if (witness.empty()) witness = describe();
        }
    }
};

VerdictReport tally_report(const std::string& claim, const Field& field,
                           const CheckConfig& config, const SuiteTally& tally,
                           std::string bound_desc, std::uint64_t ms) {
    return make_report(
        claim, field, config,
        {{"instances", std::to_string(tally.instances)},
         {"bound", std::move(bound_desc)}},
        std::to_string(tally.violations) + " violations", "0",
        tally.violations == 0, tally.witness, ms);
}

} // namespace

std::vector<VerdictReport> check_imm_rank_case(std::size_t n, std::size_t d,
                                               const CheckConfig& config) {
    std::vector<VerdictReport> out;
    Timer t;
    Polynomial f = gen_imm(n, d, config.field, config.budget);
    Partition pi = Partition::imm(n, d);
    PolyCoeffMatrix m = PolyCoeffMatrix::build(f, pi);
    MaxrankResult res = maxrank(m, exhaustive_options(config));
    const std::uint64_t want = ipow(n, d - 1);

    std::vector<std::pair<std::string, std::string>> params = {
        {"n", std::to_string(n)}, {"d", std::to_string(d)}};
    out.push_back(make_report(
        "imm-rank", config.field, config, params, std::to_string(res.value),
        std::to_string(want), res.exact && res.value == want,
        "matrix " + std::to_string(res.matrix_rows) + "x" +
            std::to_string(res.matrix_cols),
        t.ms()));

    Timer t2;
    out.push_back(make_report("imm-monomials", config.field, config, params,
                              std::to_string(f.num_terms()), std::to_string(want),
                              f.num_terms() == want, "", t2.ms()));

    // The nonzero block should be a permuted identity: one constant-1 entry
    // per row and per column, with exactly n^(d-1) of each.
    Timer t3;
    bool structure = m.row_masks().size() == want && m.col_masks().size() == want &&
                     m.entries().size() == want;
    for (const auto& [key, e] : m.entries()) {
        if (!(e.num_terms() == 1 && e.coefficient(Monomial()).value() == 1))
            structure = false;
    }
    out.push_back(make_report("imm-structure", config.field, config, params,
                              std::to_string(m.entries().size()) + " cells",
                              std::to_string(want), structure,
                              "all entries constant 1", t3.ms()));
    return out;
}

std::vector<VerdictReport> check_imm_rank(const CheckConfig& config) {
    std::vector<VerdictReport> out;
    for (auto [n, d] : std::vector<std::pair<std::size_t, std::size_t>>{
             {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
        std::vector<VerdictReport> part = check_imm_rank_case(n, d, config);
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

std::vector<VerdictReport> check_imm_grid_case(std::size_t n, std::size_t d,
                                               const CheckConfig& config) {
    std::vector<VerdictReport> out;
    Timer t;
    std::vector<Polynomial> grid = gen_imm_grid(n, d, config.field, config.budget);
    Partition pi = Partition::imm(n, d);
    const std::uint64_t want = ipow(n, d - 1);

    std::uint64_t rank_violations = 0;
    std::string witness;
    std::vector<std::set<std::uint64_t>> row_sets(grid.size()), col_sets(grid.size());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t idx = j * n + k;
            PolyCoeffMatrix m = PolyCoeffMatrix::build(grid[idx], pi);
            MaxrankResult res = maxrank(m, exhaustive_options(config));
            if (!(res.exact && res.value == want)) {
                ++rank_violations;
                if (witness.empty())
                    witness = "cell (" + std::to_string(j + 1) + "," +
                              std::to_string(k + 1) + ") rank " +
                              std::to_string(res.value);
            }
            row_sets[idx].insert(m.row_masks().begin(), m.row_masks().end());
            col_sets[idx].insert(m.col_masks().begin(), m.col_masks().end());
        }
    }
    std::vector<std::pair<std::string, std::string>> params = {
        {"n", std::to_string(n)}, {"d", std::to_string(d)}};
    out.push_back(make_report("imm-grid", config.field, config, params,
                              std::to_string(rank_violations) + " cells off rank " +
                                  std::to_string(want),
                              "0", rank_violations == 0, witness, t.ms()));

    // Cells in different product rows use disjoint row supports; for even d
    // (last layer on the Z side) different product columns use disjoint
    // column supports.
    Timer t2;
    std::uint64_t overlap_violations = 0;
    std::string overlap_witness;
    auto disjoint = [](const std::set<std::uint64_t>& a,
                       const std::set<std::uint64_t>& b) {
        for (std::uint64_t m : a)
            if (b.count(m)) return false;
        return true;
    };
    for (std::size_t a = 0; a < grid.size(); ++a) {
        for (std::size_t b = a + 1; b < grid.size(); ++b) {
            const std::size_t ja = a / n, ka = a % n;
            const std::size_t jb = b / n, kb = b % n;
            if (ja != jb && !disjoint(row_sets[a], row_sets[b])) {
                ++overlap_violations;
                if (overlap_witness.empty())
                    overlap_witness = "row supports of cells " + std::to_string(a) +
                                      "," + std::to_string(b);
            }
            if (d % 2 == 0 && ka != kb && !disjoint(col_sets[a], col_sets[b])) {
                ++overlap_violations;
                if (overlap_witness.empty())
                    overlap_witness = "col supports of cells " + std::to_string(a) +
                                      "," + std::to_string(b);
            }
        }
    }
    out.push_back(make_report("imm-grid-disjoint", config.field, config, params,
                              std::to_string(overlap_violations) + " overlaps", "0",
                              overlap_violations == 0, overlap_witness, t2.ms()));
    return out;
}

std::vector<VerdictReport> check_imm_grid(const CheckConfig& config) {
    std::vector<VerdictReport> out;
    for (auto [n, d] : std::vector<std::pair<std::size_t, std::size_t>>{
             {2, 2}, {3, 2}, {2, 4}}) {
        std::vector<VerdictReport> part = check_imm_grid_case(n, d, config);
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

std::vector<VerdictReport> check_q_rank_case(std::size_t n,
                                             const CheckConfig& config) {
    std::vector<VerdictReport> out;
    Timer t;
    Polynomial q = gen_q(n, config.field);
    Partition pi = q_partition(n);
    MaxrankResult res =
        maxrank(PolyCoeffMatrix::build(q, pi), exhaustive_options(config));
    const std::uint64_t w = binomial(n / 2, n / 4);

    std::vector<std::pair<std::string, std::string>> params = {
        {"n", std::to_string(n)}};
    out.push_back(make_report("q-rank", config.field, config, params,
                              std::to_string(res.value), std::to_string(w),
                              res.exact && res.value == w,
                              std::to_string(q.num_terms()) + " monomials",
                              t.ms()));

    // w^2 * n >= 2^n certifies w >= 2^(n/2)/sqrt(n) in exact integers.
    Timer t2;
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(res.value) * res.value * n;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(1) << n;
    out.push_back(make_report(
        "q-bound", config.field, config, params, std::to_string(res.value),
        "2^(n/2)/sqrt(n)", lhs >= rhs,
        "value^2 * n = " + std::to_string(res.value * res.value * n) + " >= 2^" +
            std::to_string(n),
        t2.ms()));
    return out;
}

std::vector<VerdictReport> check_q_rank(const CheckConfig& config) {
    std::vector<VerdictReport> out;
    for (std::size_t n : {std::size_t(4), std::size_t(8), std::size_t(12)}) {
        std::vector<VerdictReport> part = check_q_rank_case(n, config);
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

std::vector<VerdictReport> check_propositions(const CheckConfig& config) {
    const Field& field = config.field;
    if (field.modulus() != 2 && field.modulus() != 3)
        throw InputError(
            "the proposition suite runs over GF(2) or GF(3); got modulus " +
            std::to_string(field.modulus()));

    std::vector<VerdictReport> out;
    const std::uint64_t instances = config.trials ? config.trials : 500;
    UniversePtr u = yz_universe(2, 2);
    YzSplit split = YzSplit::by_prefix(u);
    const std::vector<VarId> all_vars = {0, 1, 2, 3};
    const std::vector<VarId> y_vars = {0, 1};
    const std::vector<VarId> z_vars = {2, 3};
    auto salt = [&](std::uint64_t claim_idx, std::uint64_t i) {
        return derive_seed(config.seed, claim_idx * 0x10000000ull +
                                            field.modulus() * 0x1000000ull + i);
    };
    auto mr = [&](const Polynomial& f) {
        return exhaustive_maxrank(f, split, config).value;
    };

    // Rank never exceeds 2^a, a the smaller occurring side.
    {
        Timer t;
        SuiteTally tally;
        for (std::uint64_t i = 0; i < instances; ++i) {
            Rng rng(salt(1, i));
            Polynomial f = random_poly_on(u, field, all_vars, rng, 5, 3, true);
            std::size_t ny = 0, nz = 0;
            for (VarId v : f.support_vars())
                (split.side(v) == Side::Y ? ny : nz) += 1;
            const std::uint64_t cap = 1ull << std::min(ny, nz);
            const std::size_t val = mr(f);
            tally.record(val <= cap, [&] {
                return "rank " + std::to_string(val) + " > " + std::to_string(cap) +
                       " for " + poly_head(f);
            });
        }
        out.push_back(tally_report("prop-balance", field, config, tally,
                                   "2^min(|Y'|,|Z'|)", t.ms()));
    }

    // The matrix is additive and the rank subadditive.
    {
        Timer t;
        SuiteTally tally;
        for (std::uint64_t i = 0; i < instances; ++i) {
            Rng rng(salt(2, i));
            Polynomial f = random_poly_on(u, field, all_vars, rng, 4, 3, true);
            Polynomial g = random_poly_on(u, field, all_vars, rng, 4, 3, true);
            PolyCoeffMatrix mf = PolyCoeffMatrix::build(f, split);
            PolyCoeffMatrix mg = PolyCoeffMatrix::build(g, split);
            PolyCoeffMatrix msum = PolyCoeffMatrix::build(f + g, split);
            const bool additive = matrix_sum_matches(mf, mg, msum);
            const std::size_t vf = maxrank(mf, exhaustive_options(config)).value;
            const std::size_t vg = maxrank(mg, exhaustive_options(config)).value;
            const std::size_t vs = maxrank(msum, exhaustive_options(config)).value;
            tally.record(additive && vs <= vf + vg, [&] {
                return "f = " + poly_head(f) + "; g = " + poly_head(g) +
                       "; ranks " + std::to_string(vs) + " vs " +
                       std::to_string(vf) + "+" + std::to_string(vg);
            });
        }
        out.push_back(tally_report("prop-additive", field, config, tally,
                                   "rank(f)+rank(g)", t.ms()));
    }

    // Variable-disjoint products multiply ranks exactly.
    {
        Timer t;
        SuiteTally tally;
        for (std::uint64_t i = 0; i < instances; ++i) {
            Rng rng(salt(3, i));
            Polynomial f = random_poly_on(u, field, {0, 2}, rng, 3, 2, true);
            Polynomial g = random_poly_on(u, field, {1, 3}, rng, 3, 2, true);
            const std::size_t vf = mr(f), vg = mr(g), vp = mr(f * g);
            tally.record(vp == vf * vg, [&] {
                return "rank(fg) = " + std::to_string(vp) + " but " +
                       std::to_string(vf) + "*" + std::to_string(vg) + "; f = " +
                       poly_head(f) + "; g = " + poly_head(g);
            });
        }
        out.push_back(tally_report("prop-disjoint-product", field, config, tally,
                                   "rank(f)*rank(g)", t.ms()));
    }

    // A factor on one side never raises the rank.
    {
        Timer t;
        SuiteTally tally;
        for (std::uint64_t i = 0; i < instances; ++i) {
            Rng rng(salt(4, i));
            Polynomial f = random_poly_on(u, field, all_vars, rng, 4, 3, true);
            const std::vector<VarId>& side = (i % 2 == 0) ? y_vars : z_vars;
            Polynomial g = random_poly_on(u, field, side, rng, 3, 2, true);
            const std::size_t vf = mr(f), vp = mr(f * g);
            tally.record(vp <= vf, [&] {
                return "rank(fg) = " + std::to_string(vp) + " > rank(f) = " +
                       std::to_string(vf) + "; g = " + poly_head(g);
            });
        }
        out.push_back(tally_report("prop-one-sided-factor", field, config, tally,
                                   "rank(f)", t.ms()));
    }

    // An affine factor at most doubles the rank.
    {
        Timer t;
        SuiteTally tally;
        for (std::uint64_t i = 0; i < instances; ++i) {
            Rng rng(salt(5, i));
            Polynomial f = random_poly_on(u, field, all_vars, rng, 4, 3, true);
            Polynomial ell = random_affine_poly(u, field, rng);
            const std::size_t vf = mr(f), vp = mr(ell * f);
            tally.record(vp <= 2 * vf, [&] {
                return "rank(lf) = " + std::to_string(vp) + " > 2*" +
                       std::to_string(vf) + "; l = " + poly_head(ell);
            });
        }
        out.push_back(tally_report("cor-linear-factor", field, config, tally,
                                   "2*rank(f)", t.ms()));
    }

    // A sum of r one-sided products has rank at most r.
    {
        Timer t;
        SuiteTally tally;
        for (std::uint64_t i = 0; i < instances; ++i) {
            Rng rng(salt(6, i));
            const std::uint64_t r = rng.range(1, 3);
            Polynomial f = Polynomial::zero(field, u);
            for (std::uint64_t j = 0; j < r; ++j) {
                Polynomial g = random_poly_on(u, field, y_vars, rng, 3, 2, true);
                Polynomial h = random_poly_on(u, field, z_vars, rng, 3, 2, true);
                f = f + g * h;
            }
            const std::size_t val = mr(f);
            tally.record(val <= r, [&] {
                return "rank " + std::to_string(val) + " > r = " +
                       std::to_string(r) + " for " + poly_head(f);
            });
        }
        out.push_back(tally_report("cor-bilinear-sum", field, config, tally,
                                   "r summands", t.ms()));
    }

    // Rank never exceeds the monomial count.
    {
        Timer t;
        SuiteTally tally;
        for (std::uint64_t i = 0; i < instances; ++i) {
            Rng rng(salt(7, i));
            Polynomial f = random_poly_on(u, field, all_vars, rng, 4, 3, true);
            const std::size_t val = mr(f);
            tally.record(val <= f.num_terms(), [&] {
                return "rank " + std::to_string(val) + " > " +
                       std::to_string(f.num_terms()) + " monomials";
            });
        }
        out.push_back(tally_report("cor-few-monomials", field, config, tally,
                                   "monomial count", t.ms()));
    }

    // Powers of one affine form: rank at most t + 1, any characteristic.
    {
        Timer t;
        SuiteTally tally;
        for (std::uint64_t i = 0; i < instances; ++i) {
            Rng rng(salt(8, i));
            Polynomial ell = random_affine_poly(u, field, rng);
            const std::uint32_t e = static_cast<std::uint32_t>(rng.range(1, 4));
            const std::size_t val = mr(ell.pow(e, config.budget));
            tally.record(val <= e + 1, [&] {
                return "rank " + std::to_string(val) + " > " +
                       std::to_string(e + 1) + " for (" + poly_head(ell) + ")^" +
                       std::to_string(e);
            });
        }
        out.push_back(
            tally_report("power-rank", field, config, tally, "t+1", t.ms()));
    }
    return out;
}

std::vector<VerdictReport> check_depth3_bound(const CheckConfig& config) {
    std::vector<VerdictReport> out;
    const Field field(3); // odd characteristic; GF(2) is covered by unit tests
    const std::uint64_t instances = config.trials ? config.trials : 200;

    Timer t;
    SuiteTally tally;
    for (std::uint64_t i = 0; i < instances; ++i) {
        Rng prng(derive_seed(config.seed, 0x7D300000ull + i));
        SpsGenParams p;
        p.top_fanin = 1 + prng.below(4);
        p.gate_fanin = 1 + prng.below(4);
        p.y_count = 1 + prng.below(3);
        p.z_count = 1 + prng.below(3);
        p.homogeneous = true;
        SigmaPiSigma c =
            gen_random_sps(p, field, derive_seed(config.seed, 0x7D3F0000ull + i));
        Polynomial f = c.expand(config.budget);
        YzSplit split = YzSplit::by_prefix(c.universe);
        const std::size_t val = exhaustive_maxrank(f, split, config).value;
        const std::uint64_t cap = p.top_fanin * (1ull << p.gate_fanin);
        tally.record(val <= cap, [&] {
            return "rank " + std::to_string(val) + " > " + std::to_string(cap) +
                   " at k=" + std::to_string(p.top_fanin) +
                   ", d=" + std::to_string(p.gate_fanin);
        });
    }
    out.push_back(tally_report("depth3-random", field, config, tally,
                               "top_fanin * 2^degree", t.ms()));

    // (y1 + z1)(y2 + z2) meets its bound 1 * 2^2 with rank exactly 4.
    Timer t2;
    UniversePtr u = yz_universe(2, 2);
    SigmaPiSigma tight(field, u);
    AffineForm f1, f2;
    f1.linear[0] = 1; // y1
    f1.linear[2] = 1; // z1
    f2.linear[1] = 1; // y2
    f2.linear[3] = 1; // z2
    tight.gates.push_back({f1, f2});
    MaxrankResult res = exhaustive_maxrank(tight.expand(config.budget),
                                           YzSplit::by_prefix(u), config);
    out.push_back(make_report("depth3-tight", field, config,
                              {{"k", "1"}, {"d", "2"}}, std::to_string(res.value),
                              "4", res.exact && res.value == 4, "(y1+z1)(y2+z2)",
                              t2.ms()));
    return out;
}

std::vector<VerdictReport> check_product_sparse_bound(const CheckConfig& config) {
    std::vector<VerdictReport> out;
    const Field field(2);
    const std::uint64_t instances = config.trials ? config.trials : 100;

    Timer t;
    SuiteTally tally;
    std::uint64_t weak_nodes_checked = 0;
    for (std::uint64_t i = 0; i < instances; ++i) {
        Rng prng(derive_seed(config.seed, 0x50F00000ull + i));
        ProductSparseGenParams p;
        p.s = static_cast<std::uint32_t>(prng.below(3));
        p.depth = 1 + static_cast<std::uint32_t>(prng.below(2));
        p.max_leaves = 6 + prng.below(15);
        p.y_count = 2 + prng.below(2);
        p.z_count = 2 + prng.below(2);
        Formula f = gen_random_product_sparse(
            p, field, derive_seed(config.seed, 0x50FF0000ull + i));
        YzSplit split = YzSplit::by_prefix(f.universe());
        std::vector<NodeProfile> profiles = node_profiles(f, split);
        std::vector<Polynomial> polys = f.expand_all(config.budget);
        std::vector<std::uint64_t> sizes = subtree_sizes(f);

        for (std::uint32_t k : {1u, 2u}) {
            WeakNodeReport weak = k_weak_nodes(f, split, k);
            for (std::uint32_t v = 0; v < f.size(); ++v) {
                if (!weak.weak[v]) continue;
                ++weak_nodes_checked;
                const std::size_t val =
                    exhaustive_maxrank(polys[v], split, config).value;
                const std::int64_t e2 =
                    2ll * p.s * profiles[v].ps_depth + profiles[v].b2 - k;
                const bool ok = within_pow2_bound(val, sizes[v], e2);
                tally.record(ok, [&] {
                    return "instance " + std::to_string(i) + " node " +
                           std::to_string(v) + ": rank " + std::to_string(val) +
                           " > " + pow2_bound_text(sizes[v], e2) +
                           " at k=" + std::to_string(k);
                });
            }
        }
    }
    out.push_back(make_report(
        "weak-node-bound", field, config,
        {{"instances", std::to_string(instances)},
         {"weak_nodes", std::to_string(weak_nodes_checked)}},
        std::to_string(tally.violations) + " violations", "0",
        tally.violations == 0, tally.witness, t.ms()));

    // Four pinned formulas, one per mechanism that makes a node weak: an
    // unbalanced product, a disjoint product of weak halves, a sparse
    // non-disjoint product above a weak subtree and a sum of weak halves.
    // s = 1, k = 1 throughout.
    UniversePtr u = yz_universe(2, 2);
    YzSplit split = YzSplit::by_prefix(u);
    struct Scenario {
        const char* name;
        Formula formula;
        std::size_t expected_rank;
    };
    std::vector<Scenario> scenarios;
    {
        Formula f(field, u); // y1 * y2: the root itself is 1-unbalanced
        f.add_times(f.add_var(0), f.add_var(1));
        scenarios.push_back({"unbalanced-root", std::move(f), 1});
    }
    {
        Formula f(field, u); // (y1*y2) * (z1*z2): disjoint product of weak halves
        std::uint32_t a = f.add_times(f.add_var(0), f.add_var(1));
        std::uint32_t b = f.add_times(f.add_var(2), f.add_var(3));
        f.add_times(a, b);
        scenarios.push_back({"disjoint-product", std::move(f), 1});
    }
    {
        Formula f(field, u); // ((y1*y2)*(z1*z2)) * z1: sparse non-disjoint product
        std::uint32_t a = f.add_times(f.add_var(0), f.add_var(1));
        std::uint32_t b = f.add_times(f.add_var(2), f.add_var(3));
        f.add_times(f.add_times(a, b), f.add_var(2));
        scenarios.push_back({"sparse-product", std::move(f), 1});
    }
    {
        Formula f(field, u); // y1*y2 + z1*z2: sum of weak halves
        std::uint32_t a = f.add_times(f.add_var(0), f.add_var(1));
        std::uint32_t b = f.add_times(f.add_var(2), f.add_var(3));
        f.add_plus(a, b);
        scenarios.push_back({"plus-gate", std::move(f), 2});
    }
    for (const Scenario& sc : scenarios) {
        Timer ts;
        const Formula& f = sc.formula;
        const std::uint32_t root = f.root();
        std::vector<NodeProfile> profiles = node_profiles(f, split);
        WeakNodeReport weak = k_weak_nodes(f, split, 1);
        std::vector<std::uint64_t> sizes = subtree_sizes(f);
        const std::size_t val =
            exhaustive_maxrank(f.expand(config.budget), split, config).value;
        const std::int64_t e2 =
            2ll * 1 * profiles[root].ps_depth + profiles[root].b2 - 1;
        const bool ok = weak.weak[root] && val == sc.expected_rank &&
                        within_pow2_bound(val, sizes[root], e2);
        out.push_back(make_report(
            "weak-node-cases", field, config, {{"case", sc.name}},
            std::to_string(val), pow2_bound_text(sizes[root], e2), ok,
            weak.weak[root] ? "root is 1-weak" : "root not 1-weak", ts.ms()));
    }
    return out;
}

std::vector<VerdictReport> check_preprocessing_invariance(const CheckConfig& config) {
    std::vector<VerdictReport> out;
    const std::uint64_t instances = config.trials ? config.trials : 100;
    UniversePtr u = yz_universe(3, 3);
    YzSplit split = YzSplit::by_prefix(u);

    Timer t;
    SuiteTally tally;
    for (std::uint64_t i = 0; i < instances; ++i) {
        Rng prng(derive_seed(config.seed, 0x4E400000ull + i));
        const std::size_t leaves = 4 + prng.below(9);
        Formula f = gen_random_formula(u, config.field, leaves,
                                       derive_seed(config.seed, 0x4E4F0000ull + i));
        Formula g = preprocess(f, derive_seed(config.seed, 0x4E4E0000ull + i), 2);

        bool same = f.size() == g.size();
        std::vector<NodeProfile> pf = node_profiles(f, split);
        std::vector<NodeProfile> pg = node_profiles(g, split);
        for (std::size_t v = 0; same && v < pf.size(); ++v) {
            same = pf[v].y_vars == pg[v].y_vars && pf[v].z_vars == pg[v].z_vars &&
                   pf[v].a2 == pg[v].a2 && pf[v].b2 == pg[v].b2 &&
                   pf[v].ps_depth == pg[v].ps_depth;
        }
        for (std::uint32_t k : {1u, 2u}) {
            if (!same) break;
            same = k_weak_nodes(f, split, k).weak == k_weak_nodes(g, split, k).weak;
        }
        tally.record(same, [&] {
            return "instance " + std::to_string(i) + " with " +
                   std::to_string(leaves) + " leaves diverged";
        });
    }
    out.push_back(tally_report("preprocess-invariance", config.field, config,
                               tally, "identical profiles and weak sets", t.ms()));
    return out;
}

std::vector<VerdictReport> check_abp_bound(const CheckConfig& config) {
    std::vector<VerdictReport> out;
    const std::uint64_t instances = config.trials ? config.trials : 50;

    Timer t;
    SuiteTally bound_tally;
    SuiteTally decomp_tally;
    for (std::uint64_t i = 0; i < instances; ++i) {
        Rng prng(derive_seed(config.seed, 0xAB000000ull + i));
        AbpGenParams p;
        p.n = 2 + prng.below(2);
        p.depth = 2 + prng.below(2 * p.n - 1);
        p.max_width = 1 + prng.below(3);
        Abp abp = gen_ordered_abp(p, config.field,
                                  derive_seed(config.seed, 0xABF00000ull + i));
        AbpPartitionCheck chk = abp_partition_check(abp);
        std::vector<Side> sides(2 * p.n, Side::Z);
        for (std::size_t v = 0; v < p.n; ++v) sides[v] = Side::Y;
        YzSplit split(abp.universe, sides);
        Polynomial f = abp.expand(config.budget);
        const std::size_t val = exhaustive_maxrank(f, split, config).value;
        const bool ok = chk.partitioned &&
                        within_pow2_bound(val, chk.level_width, chk.bound_exponent2);
        bound_tally.record(ok, [&] {
            return "instance " + std::to_string(i) + ": rank " +
                   std::to_string(val) + " vs " +
                   pow2_bound_text(chk.level_width, chk.bound_exponent2) +
                   (chk.partitioned ? "" : " (no splitting level)");
        });

        // Re-derive the level decomposition semantically: the source/sink
        // segment polynomials must multiply back to f and obey the case
        // telling which half each side may touch.
        if (chk.partitioned) {
            const std::vector<std::uint32_t>& mid = abp.levels[chk.level];
            Polynomial sum = Polynomial::zero(config.field, abp.universe);
            bool cases_ok = true;
            const std::size_t cap = 2 * p.n - chk.level;
            for (std::size_t vi = 0; vi < mid.size(); ++vi) {
                Polynomial fs =
                    abp_segment_poly(abp, abp.source(), mid[vi], config.budget);
                Polynomial ft =
                    abp_segment_poly(abp, mid[vi], abp.sink(), config.budget);
                sum = sum + fs * ft;
                std::vector<VarId> sv = fs.support_vars();
                std::vector<VarId> tv = ft.support_vars();
                switch (chk.node_case[vi]) {
                case 1:
                    for (VarId v : sv) cases_ok = cases_ok && v < p.n;
                    cases_ok = cases_ok && tv.size() <= cap;
                    break;
                case 2:
                    for (VarId v : tv) cases_ok = cases_ok && v >= p.n;
                    cases_ok = cases_ok && sv.size() <= cap;
                    break;
                default:
                    cases_ok = cases_ok && (fs.is_zero() || ft.is_zero());
                    break;
                }
            }
            decomp_tally.record(sum == f && cases_ok, [&] {
                return "instance " + std::to_string(i) + ": level " +
                       std::to_string(chk.level) +
                       (cases_ok ? " sum mismatch" : " case mismatch");
            });
        } else {
            decomp_tally.record(false, [&] {
                return "instance " + std::to_string(i) + ": no splitting level";
            });
        }
    }
    out.push_back(tally_report("abp-level-bound", config.field, config,
                               bound_tally, "width * 2^(n - i/2)", t.ms()));
    out.push_back(tally_report("abp-decomposition", config.field, config,
                               decomp_tally, "f = sum of segment products",
                               t.ms()));

    // y1 z1 + ... + yn zn as a width-n program: rank exactly n.
    for (std::size_t n = 1; n <= 6; ++n) {
        Timer t2;
        Abp abp = gen_inner_product_abp(n, config.field);
        AbpPartitionCheck chk = abp_partition_check(abp);
        YzSplit split = YzSplit::by_prefix(abp.universe);
        MaxrankResult res =
            exhaustive_maxrank(abp.expand(config.budget), split, config);
        const bool ok = chk.partitioned && res.exact && res.value == n;
        out.push_back(make_report("abp-inner-product", config.field, config,
                                  {{"n", std::to_string(n)}},
                                  std::to_string(res.value), std::to_string(n), ok,
                                  "split at level " + std::to_string(chk.level) +
                                      ", width " + std::to_string(chk.level_width),
                                  t2.ms()));
    }

    // A single path reading x4, x1, x5, x2, x6, x3 interleaves the halves, so
    // no interior level separates them.
    {
        Timer t3;
        const std::size_t n = 3;
        UniversePtr u = indexed_universe("x", 2 * n);
        Abp abp(config.field, u);
        for (std::uint32_t v = 0; v <= 2 * n; ++v) abp.levels.push_back({v});
        const VarId order[] = {3, 0, 4, 1, 5, 2};
        for (std::uint32_t e = 0; e < 2 * n; ++e) {
            AffineForm w;
            w.linear[order[e]] = 1;
            abp.edges.push_back({e, e + 1, w});
        }
        abp.validate();
        AbpPartitionCheck chk = abp_partition_check(abp);
        const bool ok = !chk.partitioned && chk.failures.size() == 2 * n - 1;
        out.push_back(make_report(
            "abp-no-split", config.field, config, {{"n", std::to_string(n)}},
            std::to_string(chk.failures.size()) + " failing levels",
            std::to_string(2 * n - 1), ok,
            chk.failures.empty() ? std::string() : chk.failures.front(), t3.ms()));
    }
    return out;
}

std::vector<VerdictReport> check_total_dimension_bound(const CheckConfig& config) {
    std::vector<VerdictReport> out;
    const std::uint64_t instances = config.trials ? config.trials : 100;
    const Field f101(101); // keeps d! invertible for every gate degree here
    const Field f3(3);

    Timer t;
    SuiteTally rewrite_tally;
    std::uint64_t max_terms = 0;
    for (std::uint64_t i = 0; i < instances; ++i) {
        Rng prng(derive_seed(config.seed, 0xD0000000ull + i));
        SpsGenParams p;
        p.top_fanin = 1 + prng.below(3);
        p.gate_fanin = 1 + prng.below(4);
        p.y_count = 3;
        p.z_count = 3;
        p.shared_pool = 1 + prng.below(3);
        SigmaPiSigma c =
            gen_random_sps(p, f101, derive_seed(config.seed, 0xD1000000ull + i));
        const std::size_t r = sps_properties(c).total_dimension;
        for (const std::vector<AffineForm>& gate : c.gates) {
            for (std::uint32_t e = 1; e <= gate.size(); ++e) {
                bool ok = true;
                std::string note;
                try {
                    PowerSumForm ps =
                        sum_of_powers_rewrite(gate, e, f101, c.universe, config.budget);
                    const std::uint64_t cap = binomial(e + r, r);
                    max_terms = std::max<std::uint64_t>(max_terms, ps.terms.size());
                    ok = ps.terms.size() <= cap;
                    if (!ok)
                        note = std::to_string(ps.terms.size()) + " powers > C(" +
                               std::to_string(e + r) + "," + std::to_string(r) + ")";
                } catch (const Error& err) {
                    ok = false;
                    note = err.what();
                }
                rewrite_tally.record(ok, [&] {
                    return "instance " + std::to_string(i) + ": " + note;
                });
            }
        }
    }
    VerdictReport rw = tally_report("total-dim-rewrite", f101, config,
                                    rewrite_tally, "C(d+r,r) powers", t.ms());
    if (rw.witness.empty())
        rw.witness = "max powers used: " + std::to_string(max_terms);
    out.push_back(std::move(rw));

    // Same circuit shapes over GF(3): exhaustive rank against C(d+r,r)*(d+1).
    Timer t2;
    SuiteTally rank_tally;
    for (std::uint64_t i = 0; i < instances; ++i) {
        Rng prng(derive_seed(config.seed, 0xD0000000ull + i));
        SpsGenParams p;
        p.top_fanin = 1 + prng.below(3);
        p.gate_fanin = 1 + prng.below(4);
        p.y_count = 3;
        p.z_count = 3;
        p.shared_pool = 1 + prng.below(3);
        SigmaPiSigma c =
            gen_random_sps(p, f3, derive_seed(config.seed, 0xD3000000ull + i));
        SpsProperties props = sps_properties(c);
        Polynomial f = c.expand(config.budget);
        const std::size_t val =
            exhaustive_maxrank(f, YzSplit::by_prefix(c.universe), config).value;
        const std::uint64_t cap =
            binomial(props.max_gate_fanin + props.total_dimension,
                     props.total_dimension) *
            (props.max_gate_fanin + 1);
        rank_tally.record(val <= cap, [&] {
            return "instance " + std::to_string(i) + ": rank " +
                   std::to_string(val) + " > " + std::to_string(cap) + " at r=" +
                   std::to_string(props.total_dimension) +
                   ", d=" + std::to_string(props.max_gate_fanin);
        });
    }
    out.push_back(tally_report("total-dim-rank", f3, config, rank_tally,
                               "C(d+r,r)*(d+1)", t2.ms()));

    // Contrapositive sanity: the n=8 subset-pairing polynomial has rank 6,
    // but a degree-4 circuit of total dimension 0 could reach at most
    // C(4,0)*5 = 5, so no such circuit computes it.
    Timer t3;
    Polynomial q = gen_q(8, f3);
    MaxrankResult qres = maxrank(PolyCoeffMatrix::build(q, q_partition(8)),
                                 exhaustive_options(config));
    const std::uint64_t tiny_cap = binomial(4 + 0, 0) * (4 + 1);
    out.push_back(make_report(
        "total-dim-infeasible", f3, config, {{"n", "8"}, {"r", "0"}, {"d", "4"}},
        std::to_string(qres.value), std::to_string(tiny_cap),
        qres.exact && qres.value > tiny_cap,
        "rank exceeds the dimension-0 ceiling, ruling such circuits out",
        t3.ms()));
    return out;
}

std::vector<VerdictReport> partition_experiment(const CheckConfig& config) {
    std::vector<VerdictReport> out;
    const std::uint64_t trials = config.trials ? config.trials : 200;
    const std::size_t var_count = 8;
    const std::size_t leaves = 12;
    UniversePtr u = indexed_universe("x", var_count);
    Formula f = gen_random_formula(u, config.field, leaves,
                                   derive_seed(config.seed, 0xE0Full));
    const std::uint32_t root = f.root();

    // b - a never exceeds the variable count, so this k admits no unbalanced
    // node at all and the weak frequency must vanish.
    const std::uint32_t oversized = static_cast<std::uint32_t>(var_count / 2 + 1);
    for (std::uint32_t k : {1u, 2u, 3u, oversized}) {
        Timer t;
        std::uint64_t root_weak = 0;
        std::uint64_t all_weak = 0;
        std::uint64_t weak_nodes_total = 0;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            Partition pi = Partition::random_balanced(
                u, derive_seed(config.seed, 0xE1000ull + trial));
            YzSplit split(u, pi.sides());
            WeakNodeReport weak = k_weak_nodes(f, split, k);
            if (weak.weak[root]) ++root_weak;
            std::uint64_t count = 0;
            for (bool w : weak.weak) count += w ? 1 : 0;
            weak_nodes_total += count;
            if (count == f.size()) ++all_weak;
        }
        const double freq =
            static_cast<double>(root_weak) / static_cast<double>(trials);
        const double all_freq =
            static_cast<double>(all_weak) / static_cast<double>(trials);
        const double node_share = static_cast<double>(weak_nodes_total) /
                                  static_cast<double>(trials * f.size());
        const bool is_oversized = k == oversized;
        out.push_back(make_report(
            "partition-weakness", config.field, config,
            {{"k", std::to_string(k)},
             {"trials", std::to_string(trials)},
             {"vars", std::to_string(var_count)},
             {"leaves", std::to_string(leaves)}},
            fixed4(freq), is_oversized ? "0" : "observational",
            is_oversized ? root_weak == 0 : true,
            "all-nodes-weak freq " + fixed4(all_freq) + ", weak node share " +
                fixed4(node_share),
            t.ms()));
    }
    return out;
}

const std::vector<std::string>& known_claims() {
    static const std::vector<std::string> ids = {
        "imm-rank",     "imm-grid", "q-rank",
        "propositions", "depth3",   "product-sparse",
        "preprocess",   "abp",      "total-dimension"};
    return ids;
}

std::vector<VerdictReport> run_checks(const std::string& claim,
                                      const CheckConfig& config) {
    if (claim == "all") {
        std::vector<VerdictReport> out;
        for (const std::string& id : known_claims()) {
            std::vector<VerdictReport> part = run_checks(id, config);
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
        return out;
    }
    if (claim == "imm-rank") return check_imm_rank(config);
    if (claim == "imm-grid") return check_imm_grid(config);
    if (claim == "q-rank") return check_q_rank(config);
    if (claim == "propositions") return check_propositions(config);
    if (claim == "depth3") return check_depth3_bound(config);
    if (claim == "product-sparse") return check_product_sparse_bound(config);
    if (claim == "preprocess") return check_preprocessing_invariance(config);
    if (claim == "abp") return check_abp_bound(config);
    if (claim == "total-dimension") return check_total_dimension_bound(config);

    std::string msg = "unknown claim '" + claim + "'; expected one of: all";
    for (const std::string& id : known_claims()) msg += ", " + id;
    throw InputError(msg);
}

} // namespace maxrank
