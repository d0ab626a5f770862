#include "maxrank/circuit.hpp"

#include <algorithm>

#include "maxrank/errors.hpp"
#include "maxrank/rng.hpp"

namespace maxrank {

Polynomial AffineForm::to_polynomial(Field field, const UniversePtr& universe) const {
    Polynomial p(field, universe);
    p.add_term(Monomial{}, constant);
    for (const auto& [v, c] : linear) p.add_term(Monomial::var(v), c);
    return p;
}

std::vector<std::uint32_t> AffineForm::coordinates(std::size_t universe_size) const {
    std::vector<std::uint32_t> coords(universe_size + 1, 0);
    coords[0] = constant;
    for (const auto& [v, c] : linear) coords.at(v + 1) = c;
    return coords;
}

std::uint32_t Formula::add_node(Node n) {
    nodes_.push_back(std::move(n));
    claimed_.push_back(false);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
}

void Formula::claim_child(std::uint32_t id) {
    if (id >= nodes_.size())
        throw InputError("formula child id " + std::to_string(id) + " does not exist");
    if (claimed_[id])
        throw InputError("formula node " + std::to_string(id) +
                         " already feeds another gate");
    claimed_[id] = true;
}

std::uint32_t Formula::add_var(VarId v) {
    if (v >= universe_->size())
        throw UnknownVariableError("formula leaf names variable id " +
                                   std::to_string(v) + " outside the universe");
    Node n;
    n.kind = Kind::Var;
    n.var = v;
    return add_node(std::move(n));
}

std::uint32_t Formula::add_const(std::uint32_t c) {
    Node n;
    n.kind = Kind::Const;
    n.constant = field_.reduce(c);
    return add_node(std::move(n));
}

std::uint32_t Formula::add_upoly(VarId v, std::vector<std::uint32_t> coeffs) {
    if (v >= universe_->size())
        throw UnknownVariableError("formula leaf names variable id " +
                                   std::to_string(v) + " outside the universe");
    for (auto& c : coeffs) c = field_.reduce(c);
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.size() < 2)
        throw InputError("univariate leaf must have degree at least 1");
    Node n;
    n.kind = Kind::UPoly;
    n.var = v;
    n.coeffs = std::move(coeffs);
    return add_node(std::move(n));
}

std::uint32_t Formula::add_plus(std::uint32_t l, std::uint32_t r) {
    claim_child(l);
    claim_child(r);
    Node n;
    n.kind = Kind::Plus;
    n.left = l;
    n.right = r;
    return add_node(std::move(n));
}

std::uint32_t Formula::add_times(std::uint32_t l, std::uint32_t r) {
    claim_child(l);
    claim_child(r);
    Node n;
    n.kind = Kind::Times;
    n.left = l;
    n.right = r;
    return add_node(std::move(n));
}

std::uint32_t Formula::root() const {
    validate();
    return static_cast<std::uint32_t>(nodes_.size() - 1);
}

void Formula::validate() const {
    if (nodes_.empty()) throw InputError("formula has no nodes");
    std::size_t unclaimed = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.kind == Kind::Plus || n.kind == Kind::Times) {
            if (n.left >= i || n.right >= i)
                throw InputError("formula children must precede their parent");
        }
        if (!claimed_[i]) ++unclaimed;
    }
    if (unclaimed != 1 || claimed_.back())
        throw InputError("formula must have exactly one root, the last node");
}

Polynomial Formula::expand_node(std::uint32_t id, std::uint64_t budget) const {
    if (id >= nodes_.size())
        throw InputError("formula node id " + std::to_string(id) + " does not exist");
    return expand_all(budget)[id];
}

std::vector<Polynomial> Formula::expand_all(std::uint64_t budget) const {
    // Children precede parents, so one forward pass fills every value.
    std::vector<Polynomial> value;
    value.reserve(nodes_.size());
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        switch (n.kind) {
            case Kind::Var:
                value.push_back(Polynomial::variable(n.var, field_, universe_));
                break;
            case Kind::Const:
                value.push_back(Polynomial::constant(n.constant, field_, universe_));
                break;
            case Kind::UPoly: {
                Polynomial p(field_, universe_);
                for (std::size_t d = 0; d < n.coeffs.size(); ++d)
                    p.add_term(Monomial::var(n.var, static_cast<std::uint32_t>(d)),
                               n.coeffs[d]);
                value.push_back(std::move(p));
                break;
            }
            case Kind::Plus:
                value.push_back(value[n.left] + value[n.right]);
                break;
            case Kind::Times:
                value.push_back(value[n.left].mul(value[n.right], budget));
                break;
        }
    }
    return value;
}

Polynomial Formula::expand(std::uint64_t budget) const {
    return expand_node(root(), budget);
}

Formula preprocess(const Formula& f, std::uint64_t seed, std::uint32_t max_degree) {
    if (max_degree == 0)
        throw InputError("preprocessing requires max_degree >= 1");
    const std::uint32_t p = f.field().modulus();
    Rng rng(seed);
    Formula g(f.field(), f.universe());
    for (const auto& n : f.nodes()) {
        switch (n.kind) {
            case Formula::Kind::Var: {
                std::uint32_t deg =
                    static_cast<std::uint32_t>(rng.range(1, max_degree));
                std::vector<std::uint32_t> coeffs(deg + 1);
                for (std::uint32_t d = 0; d < deg; ++d)
                    coeffs[d] = static_cast<std::uint32_t>(rng.below(p));
                coeffs[deg] = static_cast<std::uint32_t>(rng.range(1, p - 1));
                g.add_upoly(n.var, std::move(coeffs));
                break;
            }
            case Formula::Kind::Const:
                g.add_const(n.constant);
                break;
            case Formula::Kind::UPoly: {
                auto coeffs = n.coeffs;
                g.add_upoly(n.var, std::move(coeffs));
                break;
            }
            case Formula::Kind::Plus:
                g.add_plus(n.left, n.right);
                break;
            case Formula::Kind::Times:
                g.add_times(n.left, n.right);
                break;
        }
    }
    g.validate();
    return g;
}

std::size_t SigmaPiSigma::max_gate_fanin() const {
    std::size_t m = 0;
    for (const auto& gate : gates) m = std::max(m, gate.size());
    return m;
}

bool SigmaPiSigma::homogeneous() const {
    for (const auto& gate : gates)
        for (const auto& form : gate)
            if (!form.homogeneous()) return false;
    return true;
}

void SigmaPiSigma::validate() const {
    if (gates.empty()) throw InputError("depth-three circuit has no gates");
    for (const auto& gate : gates) {
        if (gate.empty())
            throw InputError("every product gate needs at least one form");
        for (const auto& form : gate)
            for (const auto& [v, c] : form.linear) {
                (void)c;
                if (v >= universe->size())
                    throw UnknownVariableError(
                        "affine form names variable id " + std::to_string(v) +
                        " outside the universe");
            }
    }
}

Polynomial SigmaPiSigma::expand(std::uint64_t budget) const {
    validate();
    Polynomial sum(field, universe);
    for (const auto& gate : gates) {
        Polynomial prod = Polynomial::constant(1, field, universe);
        for (const auto& form : gate)
            prod = prod.mul(form.to_polynomial(field, universe), budget);
        sum = sum + prod;
    }
    return sum;
}

std::size_t Abp::node_count() const {
    std::size_t n = 0;
    for (const auto& level : levels) n += level.size();
    return n;
}

std::vector<std::uint32_t> Abp::level_map() const {
    std::vector<std::uint32_t> level_of(node_count(), 0);
    for (std::size_t l = 0; l < levels.size(); ++l)
        for (std::uint32_t id : levels[l]) level_of.at(id) = static_cast<std::uint32_t>(l);
    return level_of;
}

void Abp::validate() const {
    if (levels.size() < 2)
        throw InputError("branching program needs at least two levels");
    if (levels.front().size() != 1 || levels.back().size() != 1)
        throw InputError("branching program needs single source and sink nodes");
    const std::size_t n = node_count();
    std::vector<bool> seen(n, false);
    for (const auto& level : levels) {
        if (level.empty()) throw InputError("branching program has an empty level");
        for (std::uint32_t id : level) {
            if (id >= n || seen[id])
                throw InputError("branching program node ids must be 0..N-1, unique");
            seen[id] = true;
        }
    }
    auto level_of = level_map();
    for (const auto& e : edges) {
        if (e.from >= n || e.to >= n)
            throw InputError("branching program edge endpoint does not exist");
        if (level_of[e.to] != level_of[e.from] + 1)
            throw InputError("branching program edges must join consecutive levels");
        for (const auto& [v, c] : e.weight.linear) {
            (void)c;
            if (v >= universe->size())
                throw UnknownVariableError("edge weight names variable id " +
                                           std::to_string(v) +
                                           " outside the universe");
        }
    }
}

bool Abp::homogeneous() const {
    for (const auto& e : edges)
        if (e.weight.constant != 0 || e.weight.linear.empty()) return false;
    return true;
}

Polynomial Abp::expand(std::uint64_t budget) const {
    validate();
    return abp_segment_poly(*this, source(), sink(), budget);
}

Polynomial abp_segment_poly(const Abp& abp, std::uint32_t from, std::uint32_t to,
                            std::uint64_t budget) {
    auto level_of = abp.level_map();
    if (from >= abp.node_count() || to >= abp.node_count())
        throw InputError("branching program segment endpoint does not exist");
    const std::uint32_t lf = level_of[from], lt = level_of[to];
    if (lf > lt) throw InputError("segment start lies below its end");

    // Forward DP level by level; value[v] = sum over from->v paths.
    std::map<std::uint32_t, Polynomial> value;
    value.emplace(from, Polynomial::constant(1, abp.field, abp.universe));
    for (std::uint32_t l = lf; l < lt; ++l) {
        std::map<std::uint32_t, Polynomial> next;
        for (const auto& e : abp.edges) {
            if (level_of[e.from] != l) continue;
            auto it = value.find(e.from);
            if (it == value.end()) continue;
            Polynomial contrib =
                it->second.mul(e.weight.to_polynomial(abp.field, abp.universe), budget);
            auto [slot, fresh] =
                next.emplace(e.to, Polynomial::zero(abp.field, abp.universe));
            (void)fresh;
            slot->second = slot->second + contrib;
        }
        value = std::move(next);
    }
    auto it = value.find(to);
    if (it == value.end()) return Polynomial::zero(abp.field, abp.universe);
    return it->second;
}

} // namespace maxrank
