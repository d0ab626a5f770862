#include "maxrank/circuit_analysis.hpp"

#include <algorithm>
#include <set>

#include "maxrank/errors.hpp"
#include "maxrank/fp_matrix.hpp"

namespace maxrank {

namespace {

std::vector<VarId> merge_sorted(const std::vector<VarId>& a,
                                const std::vector<VarId>& b) {
    std::vector<VarId> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool disjoint_sorted(const std::vector<VarId>& a, const std::vector<VarId>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else
            return false;
    }
    return true;
}

// Syntactic variable support per node, split later by side.
std::vector<std::vector<VarId>> node_vars(const Formula& f) {
    std::vector<std::vector<VarId>> vars(f.size());
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        const auto& n = f.node(i);
        switch (n.kind) {
            case Formula::Kind::Var:
            case Formula::Kind::UPoly:
                vars[i] = {n.var};
                break;
            case Formula::Kind::Const:
                break;
            case Formula::Kind::Plus:
            case Formula::Kind::Times:
                vars[i] = merge_sorted(vars[n.left], vars[n.right]);
                break;
        }
    }
    return vars;
}

} // namespace

std::vector<NodeProfile> node_profiles(const Formula& f, const YzSplit& split) {
    require_same_universe(f.universe(), split.universe(), "node profiles");
    f.validate();
    auto vars = node_vars(f);
    std::vector<NodeProfile> profiles(f.size());
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        NodeProfile& p = profiles[i];
        for (VarId v : vars[i])
            (split.side(v) == Side::Y ? p.y_vars : p.z_vars).push_back(v);
        const std::uint32_t y = static_cast<std::uint32_t>(p.y_vars.size());
        const std::uint32_t z = static_cast<std::uint32_t>(p.z_vars.size());
        p.a2 = 2 * std::min(y, z);
        p.b2 = y + z;
        const auto& n = f.node(i);
        if (n.kind == Formula::Kind::Plus) {
            p.ps_depth = std::max(profiles[n.left].ps_depth, profiles[n.right].ps_depth);
        } else if (n.kind == Formula::Kind::Times) {
            p.ps_depth = std::max(profiles[n.left].ps_depth, profiles[n.right].ps_depth);
            if (!disjoint_sorted(vars[n.left], vars[n.right])) ++p.ps_depth;
        }
    }
    return profiles;
}

std::vector<ProductGateInfo> classify_product_gates(const Formula& f, std::uint32_t s,
                                                    std::uint64_t budget) {
    f.validate();
    auto vars = node_vars(f);
    auto values = f.expand_all(budget);
    const std::uint64_t sparse_cap = s >= 63 ? UINT64_MAX : (std::uint64_t(1) << s);
    std::vector<ProductGateInfo> gates;
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        const auto& n = f.node(i);
        if (n.kind != Formula::Kind::Times) continue;
        ProductGateInfo info;
        info.id = i;
        info.left_monomials = values[n.left].num_terms();
        info.right_monomials = values[n.right].num_terms();
        if (disjoint_sorted(vars[n.left], vars[n.right]))
            info.kind = ProductGateKind::Disjoint;
        else if (std::min(info.left_monomials, info.right_monomials) <= sparse_cap)
            info.kind = ProductGateKind::Sparse;
        else
            info.kind = ProductGateKind::Neither;
        gates.push_back(std::move(info));
    }
    return gates;
}

ProductSparseCheck is_product_sparse(const Formula& f, std::uint32_t s,
                                     std::uint64_t budget) {
    ProductSparseCheck check;
    check.ok = true;
    for (const auto& g : classify_product_gates(f, s, budget)) {
        if (g.kind == ProductGateKind::Neither) {
            check.ok = false;
            check.offenders.push_back(g.id);
        }
    }
    // The root depth only depends on disjointness; any split works.
    std::vector<Side> sides(f.universe()->size(), Side::Y);
    YzSplit split(f.universe(), std::move(sides));
    check.depth = node_profiles(f, split).back().ps_depth;
    return check;
}

WeakNodeReport k_weak_nodes(const Formula& f, const YzSplit& split, std::uint32_t k) {
    auto profiles = node_profiles(f, split);
    WeakNodeReport report;
    report.weak.assign(f.size(), true);
    // good(v): some central path into v avoids k-unbalanced nodes. Traced
    // bottom-up; `via` remembers a child realizing it.
    std::vector<std::int64_t> via(f.size(), -1);
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        if (k_unbalanced(profiles[i], k)) continue;
        if (f.is_leaf(i)) {
            report.weak[i] = false;
            continue;
        }
        const auto& n = f.node(i);
        for (std::uint32_t child : {n.left, n.right}) {
            if (report.weak[child]) continue;
            if (profiles[i].b2 <= 2 * profiles[child].b2) {
                report.weak[i] = false;
                via[i] = child;
                break;
            }
        }
    }
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        if (report.weak[i]) continue;
        std::vector<std::uint32_t> path;
        std::int64_t cur = i;
        while (cur >= 0) {
            path.push_back(static_cast<std::uint32_t>(cur));
            cur = via[cur];
        }
        std::reverse(path.begin(), path.end());
        report.balanced_path[i] = std::move(path);
    }
    return report;
}

SpsProperties sps_properties(const SigmaPiSigma& c) {
    c.validate();
    SpsProperties props;
    props.top_fanin = c.top_fanin();
    props.max_gate_fanin = c.max_gate_fanin();
    props.homogeneous = c.homogeneous();
    FpSpan total(c.field, c.universe->size() + 1);
    for (const auto& gate : c.gates) {
        FpSpan local(c.field, c.universe->size() + 1);
        for (const auto& form : gate) {
            auto coords = form.coordinates(c.universe->size());
            local.insert(coords);
            total.insert(coords);
        }
        props.product_dimension = std::max(props.product_dimension, local.rank());
    }
    props.total_dimension = total.rank();
    return props;
}

AbpPartitionCheck abp_partition_check(const Abp& abp) {
    abp.validate();
    const std::size_t vars = abp.universe->size();
    if (vars == 0 || vars % 2 != 0)
        throw InputError("ordered branching program needs an even variable count");
    const std::size_t n = vars / 2;
    const std::size_t node_count = abp.node_count();
    auto level_of = abp.level_map();

    // Variable sets of the source-side and sink-side segments, per node.
    // Nodes off every source-sink path keep empty sets but are flagged.
    std::vector<std::set<VarId>> before(node_count), after(node_count);
    std::vector<bool> from_source(node_count, false), to_sink(node_count, false);
    from_source[abp.source()] = true;
    to_sink[abp.sink()] = true;
    for (std::size_t l = 0; l + 1 < abp.levels.size(); ++l) {
        for (const auto& e : abp.edges) {
            if (level_of[e.from] != l) continue;
            if (!from_source[e.from]) continue;
            from_source[e.to] = true;
            auto& dst = before[e.to];
            dst.insert(before[e.from].begin(), before[e.from].end());
            for (const auto& [v, cf] : e.weight.linear) {
                (void)cf;
                dst.insert(v);
            }
        }
    }
    for (std::size_t l = abp.levels.size(); l-- > 1;) {
        for (const auto& e : abp.edges) {
            if (level_of[e.to] != l) continue;
            if (!to_sink[e.to]) continue;
            to_sink[e.from] = true;
            auto& dst = after[e.from];
            dst.insert(after[e.to].begin(), after[e.to].end());
            for (const auto& [v, cf] : e.weight.linear) {
                (void)cf;
                dst.insert(v);
            }
        }
    }

    auto all_in_h1 = [&](const std::set<VarId>& s) {
        return s.empty() || *s.rbegin() < n;
    };
    auto all_in_h2 = [&](const std::set<VarId>& s) {
        return s.empty() || *s.begin() >= n;
    };

    AbpPartitionCheck check;
    for (std::size_t i = 1; i < abp.levels.size() - 1; ++i) {
        const std::size_t cap = 2 * n - i; // 2n(1 - alpha) with alpha = i / (2n)
        bool ok = true;
        std::string failure;
        std::vector<int> cases;
        cases.reserve(abp.levels[i].size());
        for (std::uint32_t v : abp.levels[i]) {
            if (!from_source[v] || !to_sink[v]) {
                cases.push_back(0);
                continue;
            }
            if (all_in_h1(before[v]) && after[v].size() <= cap) {
                cases.push_back(1);
            } else if (all_in_h2(after[v]) && before[v].size() <= cap) {
                cases.push_back(2);
            } else {
                ok = false;
                failure = "level " + std::to_string(i) + ": node " +
                          std::to_string(v) + " fits neither case (|source side| = " +
                          std::to_string(before[v].size()) + ", |sink side| = " +
                          std::to_string(after[v].size()) + ", cap " +
                          std::to_string(cap) + ")";
                break;
            }
        }
        if (ok) {
            check.partitioned = true;
            check.level = i;
            check.level_width = abp.levels[i].size();
            check.bound_exponent2 = static_cast<std::uint32_t>(2 * n - i);
            check.node_case = std::move(cases);
            return check;
        }
        check.failures.push_back(std::move(failure));
    }
    return check;
}

} // namespace maxrank
