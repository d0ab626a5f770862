#include "maxrank/generators.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "maxrank/circuit_analysis.hpp"
#include "maxrank/errors.hpp"
#include "maxrank/rng.hpp"

namespace maxrank {

namespace {

VarId imm_var(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
    // x{i}_{j}_{k} with 1-based indices, ordered by (i, j, k).
    return static_cast<VarId>((i - 1) * n * n + (j - 1) * n + (k - 1));
}

} // namespace

Polynomial gen_imm(std::size_t n, std::size_t d, Field field, std::uint64_t budget) {
    UniversePtr universe = imm_universe(n, d);
    // Row vector DP: row 1 of the first matrix, then fold in one matrix at a
    // time. The (1,1) entry of the product is the first coordinate.
    std::vector<Polynomial> row;
    row.reserve(n);
    for (std::size_t k = 1; k <= n; ++k)
        row.push_back(Polynomial::variable(imm_var(n, 1, 1, k), field, universe));
    for (std::size_t i = 2; i <= d; ++i) {
        std::vector<Polynomial> next;
        next.reserve(n);
        for (std::size_t k = 1; k <= n; ++k) {
            Polynomial cell(field, universe);
            for (std::size_t j = 1; j <= n; ++j)
                cell = cell + row[j - 1].mul(Polynomial::variable(imm_var(n, i, j, k),
                                                                  field, universe),
                                             budget);
            next.push_back(std::move(cell));
        }
        row = std::move(next);
    }
    return row[0];
}

std::vector<Polynomial> gen_imm_grid(std::size_t n, std::size_t d, Field field,
                                     std::uint64_t budget) {
    UniversePtr universe = imm_universe(n, d);
    std::vector<Polynomial> grid;
    grid.reserve(n * n);
    for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t k = 1; k <= n; ++k)
            grid.push_back(Polynomial::variable(imm_var(n, 1, j, k), field, universe));
    for (std::size_t i = 2; i <= d; ++i) {
        std::vector<Polynomial> next(n * n, Polynomial::zero(field, universe));
        for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t k = 1; k <= n; ++k) {
                Polynomial cell(field, universe);
                for (std::size_t t = 1; t <= n; ++t)
                    cell = cell +
                           grid[(j - 1) * n + (t - 1)].mul(
                               Polynomial::variable(imm_var(n, i, t, k), field,
                                                    universe),
                               budget);
                next[(j - 1) * n + (k - 1)] = std::move(cell);
            }
        grid = std::move(next);
    }
    return grid;
}

Polynomial gen_q(std::size_t n, Field field) {
    if (n == 0 || n % 4 != 0)
        throw InputError("the hard multilinear polynomial needs 4 | n");
    const std::size_t m = n / 2, k = n / 4;
    if (m > 63) throw DimensionLimitError("subset enumeration holds at most 126 variables");
    UniversePtr universe = indexed_universe("x", n);
    Polynomial q(field, universe);
    // Subset masks in increasing numeric order; bit j stands for x(j+1) on
    // the left and x(m+j+1) on its mirror position.
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
        std::vector<Monomial::Term> factors;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (std::uint64_t(1) << j)) {
                factors.emplace_back(static_cast<VarId>(j), 1);
                factors.emplace_back(static_cast<VarId>(m + j), 1);
            }
        q.add_term(Monomial(std::move(factors)), 1);
    }
    return q;
}

Partition q_partition(std::size_t n) {
    if (n == 0 || n % 2 != 0) throw InputError("half/half split needs an even n");
    UniversePtr universe = indexed_universe("x", n);
    std::vector<Side> sides(n, Side::Z);
    for (std::size_t i = 0; i < n / 2; ++i) sides[i] = Side::Y;
    return Partition(std::move(universe), std::move(sides));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) throw ResourceError("binomial coefficient overflows");
    }
    return static_cast<std::uint64_t>(r);
}

namespace {

AffineForm random_form(Rng& rng, const Field& field, std::size_t vars,
                       bool homogeneous) {
    const std::uint32_t p = field.modulus();
    while (true) {
        AffineForm form;
        if (!homogeneous) form.constant = static_cast<std::uint32_t>(rng.below(p));
        for (VarId v = 0; v < vars; ++v) {
            std::uint32_t c = static_cast<std::uint32_t>(rng.below(p));
            if (c != 0) form.linear[v] = c;
        }
        if (!form.is_zero()) return form;
    }
}

AffineForm combine_forms(Rng& rng, const Field& field,
                         const std::vector<AffineForm>& basis) {
    while (true) {
        AffineForm form;
        std::uint64_t acc_c = 0;
        std::map<VarId, std::uint64_t> acc;
        for (const auto& b : basis) {
            std::uint32_t lambda = static_cast<std::uint32_t>(rng.below(field.modulus()));
            if (lambda == 0) continue;
            acc_c += std::uint64_t(lambda) * b.constant;
            for (const auto& [v, c] : b.linear) acc[v] += std::uint64_t(lambda) * c;
        }
        form.constant = field.reduce(static_cast<std::int64_t>(acc_c % field.modulus()));
        for (const auto& [v, c] : acc) {
            std::uint32_t r = field.reduce(static_cast<std::int64_t>(c % field.modulus()));
            if (r != 0) form.linear[v] = r;
        }
        if (!form.is_zero()) return form;
    }
}

} // namespace

SigmaPiSigma gen_random_sps(const SpsGenParams& params, Field field,
                            std::uint64_t seed) {
    if (params.top_fanin == 0 || params.gate_fanin == 0)
        throw InputError("depth-three generator needs positive fan-ins");
    UniversePtr universe = yz_universe(params.y_count, params.z_count);
    const std::size_t vars = universe->size();
    Rng rng(seed);
    SigmaPiSigma c(field, universe);

    std::vector<AffineForm> pool;
    for (std::size_t i = 0; i < params.shared_pool; ++i)
        pool.push_back(random_form(rng, field, vars, params.homogeneous));

    for (std::size_t g = 0; g < params.top_fanin; ++g) {
        std::vector<AffineForm> gate_basis;
        if (params.shared_pool == 0 && params.gate_dimension_cap > 0)
            for (std::size_t i = 0; i < params.gate_dimension_cap; ++i)
                gate_basis.push_back(random_form(rng, field, vars, params.homogeneous));
        std::vector<AffineForm> gate;
        for (std::size_t i = 0; i < params.gate_fanin; ++i) {
            if (!pool.empty())
                gate.push_back(pool[rng.below(pool.size())]);
            else if (!gate_basis.empty())
                gate.push_back(combine_forms(rng, field, gate_basis));
            else
                gate.push_back(random_form(rng, field, vars, params.homogeneous));
        }
        c.gates.push_back(std::move(gate));
    }
    return c;
}

namespace {

struct PsBuilder {
    Formula& f;
    Rng& rng;
    const Field& field;
    std::uint32_t s;

    std::uint32_t leaf(const std::vector<VarId>& pool) {
        if (pool.empty() || rng.below(8) == 0) {
            const std::uint32_t p = field.modulus();
            return f.add_const(p == 2 ? 1
                                      : static_cast<std::uint32_t>(rng.range(1, p - 1)));
        }
        return f.add_var(pool[rng.below(pool.size())]);
    }

    // Product of distinct pool variables: expands to one monomial, and all
    // its product gates are disjoint.
    std::uint32_t monomial_tree(std::vector<VarId> pool) {
        for (std::size_t i = pool.size() - 1; i > 0; --i)
            std::swap(pool[i], pool[rng.below(i + 1)]);
        std::size_t len = 1 + rng.below(std::min<std::size_t>(pool.size(), 3));
        std::uint32_t node = f.add_var(pool[0]);
        for (std::size_t i = 1; i < len; ++i)
            node = f.add_times(node, f.add_var(pool[i]));
        return node;
    }

    // At most 2^s multilinear monomials summed; the guaranteed-thin side of
    // a sparse product gate.
    std::uint32_t sparse_sum(const std::vector<VarId>& pool) {
        const std::uint64_t cap = std::min<std::uint64_t>(std::uint64_t(1) << s, 4);
        std::size_t terms = static_cast<std::size_t>(rng.range(1, cap));
        std::uint32_t node = monomial_tree(pool);
        for (std::size_t i = 1; i < terms; ++i)
            node = f.add_plus(node, monomial_tree(pool));
        return node;
    }

    std::uint32_t build(std::vector<VarId> pool, std::size_t leaves,
                        std::uint32_t depth_allowed) {
        if (leaves < 2 || pool.size() < 1) return leaf(pool);
        enum { Plus, Disjoint, Sparse };
        std::vector<int> options = {Plus, Plus};
        if (pool.size() >= 2) options.insert(options.end(), {Disjoint, Disjoint});
        if (depth_allowed >= 1 && !pool.empty()) options.push_back(Sparse);
        switch (options[rng.below(options.size())]) {
            case Plus: {
                std::size_t l = static_cast<std::size_t>(rng.range(1, leaves - 1));
                std::uint32_t a = build(pool, l, depth_allowed);
                std::uint32_t b = build(pool, leaves - l, depth_allowed);
                return f.add_plus(a, b);
            }
            case Disjoint: {
                for (std::size_t i = pool.size() - 1; i > 0; --i)
                    std::swap(pool[i], pool[rng.below(i + 1)]);
                std::size_t cut = static_cast<std::size_t>(rng.range(1, pool.size() - 1));
                std::vector<VarId> left(pool.begin(), pool.begin() + cut);
                std::vector<VarId> right(pool.begin() + cut, pool.end());
                std::size_t l = static_cast<std::size_t>(rng.range(1, leaves - 1));
                std::uint32_t a = build(std::move(left), l, depth_allowed);
                std::uint32_t b = build(std::move(right), leaves - l, depth_allowed);
                return f.add_times(a, b);
            }
            default: {
                std::size_t l = leaves >= 4 ? leaves - 2 : 1;
                std::uint32_t a = build(pool, l, depth_allowed - 1);
                std::uint32_t b = sparse_sum(pool);
                return f.add_times(a, b);
            }
        }
    }
};

} // namespace

Formula gen_random_product_sparse(const ProductSparseGenParams& params, Field field,
                                  std::uint64_t seed) {
    UniversePtr universe = yz_universe(params.y_count, params.z_count);
    std::vector<VarId> pool(universe->size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<VarId>(i);
    Rng rng(seed);
    Formula f(field, universe);
    PsBuilder builder{f, rng, field, params.s};
    builder.build(std::move(pool), std::max<std::size_t>(params.max_leaves, 1),
                  params.depth);
    f.validate();
    auto check = is_product_sparse(f, params.s);
    if (!check.ok || check.depth > params.depth)
        throw Error("product-sparse generator produced an out-of-class formula");
    return f;
}

Formula gen_random_formula(const UniversePtr& universe, Field field,
                           std::size_t leaves, std::uint64_t seed) {
    Rng rng(seed);
    Formula f(field, universe);
    const std::uint32_t p = field.modulus();
    // Recursion via explicit lambda; leaves >= 1.
    std::function<std::uint32_t(std::size_t)> build = [&](std::size_t count) {
        if (count <= 1) {
            if (universe->size() == 0 || rng.below(6) == 0)
                return f.add_const(static_cast<std::uint32_t>(rng.below(p)));
            return f.add_var(static_cast<VarId>(rng.below(universe->size())));
        }
        std::size_t l = static_cast<std::size_t>(rng.range(1, count - 1));
        std::uint32_t a = build(l);
        std::uint32_t b = build(count - l);
        return rng.below(2) == 0 ? f.add_plus(a, b) : f.add_times(a, b);
    };
    build(std::max<std::size_t>(leaves, 1));
    f.validate();
    return f;
}

Abp gen_ordered_abp(const AbpGenParams& params, Field field, std::uint64_t seed) {
    const std::size_t n = params.n, depth = params.depth;
    if (n == 0 || depth < 2 || depth > 2 * n)
        throw InputError("ordered branching program needs 2 <= depth <= 2n");
    UniversePtr universe = indexed_universe("x", 2 * n);
    Rng rng(seed);
    Abp abp(field, universe);

    std::uint32_t next_id = 0;
    abp.levels.push_back({next_id++});
    for (std::size_t l = 1; l < depth; ++l) {
        std::vector<std::uint32_t> level;
        std::size_t width = 1 + rng.below(std::max<std::size_t>(params.max_width, 1));
        for (std::size_t i = 0; i < width; ++i) level.push_back(next_id++);
        abp.levels.push_back(std::move(level));
    }
    abp.levels.push_back({next_id++});

    const std::size_t h1_transitions = (depth + 1) / 2;
    const std::uint32_t p = field.modulus();
    auto random_weight = [&](std::size_t transition) {
        AffineForm w;
        const VarId base = transition < h1_transitions ? 0 : static_cast<VarId>(n);
        VarId a = base + static_cast<VarId>(rng.below(n));
        w.linear[a] = static_cast<std::uint32_t>(rng.range(1, p - 1));
        if (n > 1 && rng.below(3) == 0) {
            VarId b = base + static_cast<VarId>(rng.below(n));
            if (b != a) w.linear[b] = static_cast<std::uint32_t>(rng.range(1, p - 1));
        }
        return w;
    };

    for (std::size_t l = 0; l + 1 < abp.levels.size(); ++l) {
        const auto& from = abp.levels[l];
        const auto& to = abp.levels[l + 1];
        std::set<std::pair<std::uint32_t, std::uint32_t>> present;
        auto connect = [&](std::uint32_t u, std::uint32_t v) {
            if (!present.emplace(u, v).second) return;
            abp.edges.push_back({u, v, random_weight(l)});
        };
        for (std::uint32_t u : from)
            for (std::uint32_t v : to)
                if (rng.below(5) < 2) connect(u, v);
        for (std::uint32_t v : to) {
            bool has = false;
            for (std::uint32_t u : from)
                if (present.count({u, v})) has = true;
            if (!has) connect(from[rng.below(from.size())], v);
        }
        for (std::uint32_t u : from) {
            bool has = false;
            for (std::uint32_t v : to)
                if (present.count({u, v})) has = true;
            if (!has) connect(u, to[rng.below(to.size())]);
        }
    }
    abp.validate();
    return abp;
}

Abp gen_inner_product_abp(std::size_t n, Field field) {
    if (n == 0) throw InputError("inner product needs n >= 1");
    UniversePtr universe = yz_universe(n, n);
    Abp abp(field, universe);
    abp.levels.push_back({0});
    std::vector<std::uint32_t> middle;
    for (std::size_t i = 0; i < n; ++i) middle.push_back(static_cast<std::uint32_t>(i + 1));
    abp.levels.push_back(std::move(middle));
    abp.levels.push_back({static_cast<std::uint32_t>(n + 1)});
    for (std::size_t i = 0; i < n; ++i) {
        AffineForm y, z;
        y.linear[static_cast<VarId>(i)] = 1;
        z.linear[static_cast<VarId>(n + i)] = 1;
        abp.edges.push_back({0, static_cast<std::uint32_t>(i + 1), std::move(y)});
        abp.edges.push_back({static_cast<std::uint32_t>(i + 1),
                             static_cast<std::uint32_t>(n + 1), std::move(z)});
    }
    abp.validate();
    return abp;
}

Polynomial random_polynomial(const UniversePtr& universe, Field field,
                             const RandomPolyParams& params, std::uint64_t seed) {
    Rng rng(seed);
    Polynomial poly(field, universe);
    const std::uint32_t p = field.modulus();
    const std::size_t nvars = universe->size();
    for (std::size_t t = 0; t < params.terms; ++t) {
        std::uint32_t min_deg = params.allow_constant_term ? 0 : 1;
        std::uint32_t max_deg = params.max_degree;
        if (params.multilinear)
            max_deg = std::min<std::uint32_t>(max_deg, static_cast<std::uint32_t>(nvars));
        if (nvars == 0) max_deg = 0;
        if (max_deg < min_deg) max_deg = min_deg;
        std::uint32_t deg =
            static_cast<std::uint32_t>(rng.range(min_deg, max_deg));
        std::vector<Monomial::Term> factors;
        if (params.multilinear) {
            std::vector<VarId> ids(nvars);
            for (std::size_t i = 0; i < nvars; ++i) ids[i] = static_cast<VarId>(i);
            for (std::size_t i = 0; i < deg; ++i) {
                std::size_t j = i + rng.below(nvars - i);
                std::swap(ids[i], ids[j]);
                factors.emplace_back(ids[i], 1);
            }
        } else {
            for (std::uint32_t i = 0; i < deg; ++i)
                factors.emplace_back(static_cast<VarId>(rng.below(nvars)), 1);
        }
        std::uint32_t coeff =
            p == 2 ? 1 : static_cast<std::uint32_t>(rng.range(1, p - 1));
        poly.add_term(Monomial(std::move(factors)), coeff);
    }
    return poly;
}

} // namespace maxrank
