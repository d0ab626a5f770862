#include "maxrank/partition.hpp"

#include <algorithm>

#include "json.hpp"

#include "maxrank/errors.hpp"
#include "maxrank/rng.hpp"

namespace maxrank {

YzSplit::YzSplit(UniversePtr universe, std::vector<Side> sides)
    : universe_(std::move(universe)), sides_(std::move(sides)) {
    if (sides_.size() != universe_->size())
        throw InputError("side tags do not cover the universe");
    slots_.resize(sides_.size());
    for (VarId v = 0; v < sides_.size(); ++v) {
        if (sides_[v] == Side::Y) {
            slots_[v] = static_cast<std::uint32_t>(y_vars_.size());
            y_vars_.push_back(v);
        } else {
            slots_[v] = static_cast<std::uint32_t>(z_vars_.size());
            z_vars_.push_back(v);
        }
    }
}

YzSplit YzSplit::by_prefix(UniversePtr universe) {
    std::vector<Side> sides;
    sides.reserve(universe->size());
    for (const auto& name : universe->names()) {
        char c = name.front();
        if (c == 'y' || c == 'Y')
            sides.push_back(Side::Y);
        else if (c == 'z' || c == 'Z')
            sides.push_back(Side::Z);
        else
            throw InputError("variable '" + name +
                             "' has no y/z prefix; side tags must be explicit");
    }
    return YzSplit(std::move(universe), std::move(sides));
}

Partition::Partition(UniversePtr domain, std::vector<Side> sides)
    : domain_(std::move(domain)), sides_(std::move(sides)) {
    if (sides_.size() != domain_->size())
        throw InputError("side tags do not cover the partition domain");
    index();
}

void Partition::index() {
    slots_.assign(sides_.size(), 0);
    y_count_ = z_count_ = 0;
    for (VarId v = 0; v < sides_.size(); ++v)
        slots_[v] = static_cast<std::uint32_t>(sides_[v] == Side::Y ? y_count_++
                                                                    : z_count_++);
    codomain_ = yz_universe(y_count_, z_count_);
}

Partition Partition::random_balanced(UniversePtr domain, std::uint64_t seed) {
    const std::size_t n = domain->size();
    if (n == 0) throw InputError("cannot partition an empty universe");
    std::vector<VarId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<VarId>(i);
    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(ids[i], ids[rng.below(i + 1)]);
    std::vector<Side> sides(n, Side::Z);
    for (std::size_t i = 0; i < n / 2; ++i) sides[ids[i]] = Side::Y;
    return Partition(std::move(domain), std::move(sides));
}

Partition Partition::imm(std::size_t n, std::size_t d) {
    UniversePtr domain = imm_universe(n, d);
    std::vector<Side> sides;
    sides.reserve(domain->size());
    for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t jk = 0; jk < n * n; ++jk)
            sides.push_back(i % 2 == 1 ? Side::Y : Side::Z);
    return Partition(std::move(domain), std::move(sides));
}

VarId Partition::image(VarId v) const {
    return sides_.at(v) == Side::Y
               ? slots_.at(v)
               : static_cast<VarId>(y_count_ + slots_.at(v));
}

std::vector<std::string> Partition::y_names() const {
    std::vector<std::string> names(y_count_);
    for (VarId v = 0; v < sides_.size(); ++v)
        if (sides_[v] == Side::Y) names[slots_[v]] = domain_->name(v);
    return names;
}

std::vector<std::string> Partition::z_names() const {
    std::vector<std::string> names(z_count_);
    for (VarId v = 0; v < sides_.size(); ++v)
        if (sides_[v] == Side::Z) names[slots_[v]] = domain_->name(v);
    return names;
}

YzSplit Partition::codomain_split() const {
    std::vector<Side> sides(y_count_, Side::Y);
    sides.resize(y_count_ + z_count_, Side::Z);
    return YzSplit(codomain_, std::move(sides));
}

Polynomial Partition::apply(const Polynomial& f) const {
    require_same_universe(f.universe(), domain_, "partition application");
    Polynomial g(f.field(), codomain_);
    for (const auto& [m, c] : f.terms()) {
        std::vector<Monomial::Term> mapped;
        mapped.reserve(m.factors().size());
        for (const auto& [v, e] : m.factors()) mapped.emplace_back(image(v), e);
        g.add_term(Monomial(std::move(mapped)), c);
    }
    return g;
}

std::string Partition::to_json() const {
    nlohmann::ordered_json j;
    j["Y"] = y_names();
    j["Z"] = z_names();
    return j.dump(2);
}

Partition Partition::from_json(const std::string& text, UniversePtr domain) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("partition JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("Y") || !j.contains("Z") ||
        !j["Y"].is_array() || !j["Z"].is_array())
        throw ParseError("partition JSON must be {\"Y\": [...], \"Z\": [...]}");

    Partition p;
    p.domain_ = std::move(domain);
    const std::size_t n = p.domain_->size();
    p.sides_.assign(n, Side::Y);
    p.slots_.assign(n, 0);
    std::vector<bool> seen(n, false);
    auto take = [&](const nlohmann::ordered_json& arr, Side side, std::size_t& count) {
        for (const auto& item : arr) {
            if (!item.is_string())
                throw ParseError("partition JSON: variable names must be strings");
            VarId v = p.domain_->require(item.get<std::string>());
            if (seen[v])
                throw InputError("partition assigns variable '" +
                                 p.domain_->name(v) + "' twice");
            seen[v] = true;
            p.sides_[v] = side;
            p.slots_[v] = static_cast<std::uint32_t>(count++);
        }
    };
    take(j["Y"], Side::Y, p.y_count_);
    take(j["Z"], Side::Z, p.z_count_);
    for (VarId v = 0; v < n; ++v)
        if (!seen[v])
            throw InputError("partition misses variable '" + p.domain_->name(v) + "'");
    p.codomain_ = yz_universe(p.y_count_, p.z_count_);
    return p;
}

UniversePtr imm_universe(std::size_t n, std::size_t d) {
    if (n == 0 || d == 0)
        throw InputError("matrix product needs n >= 1 and d >= 1");
    std::vector<std::string> names;
    names.reserve(n * n * d);
    for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t k = 1; k <= n; ++k)
                names.push_back("x" + std::to_string(i) + "_" + std::to_string(j) +
                                "_" + std::to_string(k));
    return VarUniverse::of(std::move(names));
}

} // namespace maxrank
