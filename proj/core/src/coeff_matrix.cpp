#include "maxrank/coeff_matrix.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "maxrank/errors.hpp"
#include "maxrank/fp_matrix.hpp"
#include "maxrank/poly_text.hpp"
#include "maxrank/rng.hpp"

namespace maxrank {

ScalarMatrix::ScalarMatrix(Field field, std::vector<std::uint64_t> row_supports,
                           std::vector<std::uint64_t> col_supports,
                           std::vector<std::uint32_t> data)
    : field_(field),
      row_supports_(std::move(row_supports)),
      col_supports_(std::move(col_supports)),
      data_(std::move(data)) {
    if (data_.size() != row_supports_.size() * col_supports_.size())
        throw InputError("scalar matrix data does not match its dimensions");
}

std::size_t ScalarMatrix::rank(std::size_t limit) const {
    if (rows() > limit || cols() > limit)
        throw DimensionLimitError("matrix is " + std::to_string(rows()) + "x" +
                                  std::to_string(cols()) +
                                  ", above the rank limit of " + std::to_string(limit));
    return fp_rank(field_, rows(), cols(), data_);
}

PolyCoeffMatrix PolyCoeffMatrix::build(const Polynomial& f, const YzSplit& split) {
    require_same_universe(f.universe(), split.universe(), "coefficient matrix");
    if (split.y_count() > 64 || split.z_count() > 64)
        throw DimensionLimitError("support masks hold at most 64 variables per side");
    PolyCoeffMatrix m(f.field(), split);
    for (const auto& [mono, c] : f.terms()) {
        std::uint64_t ymask = 0, zmask = 0;
        for (const auto& [v, e] : mono.factors()) {
            (void)e;
            if (split.side(v) == Side::Y)
                ymask |= std::uint64_t(1) << split.slot(v);
            else
                zmask |= std::uint64_t(1) << split.slot(v);
        }
        auto [it, fresh] = m.entries_.try_emplace(
            std::make_pair(ymask, zmask), Polynomial::zero(f.field(), f.universe()));
        (void)fresh;
        it->second.add_term(mono.divide(mono.support()), c);
    }
    std::set<std::uint64_t> rows, cols;
    for (const auto& [key, poly] : m.entries_) {
        (void)poly;
        rows.insert(key.first);
        cols.insert(key.second);
    }
    m.row_masks_.assign(rows.begin(), rows.end());
    m.col_masks_.assign(cols.begin(), cols.end());
    return m;
}

PolyCoeffMatrix PolyCoeffMatrix::build(const Polynomial& f, const Partition& pi) {
    return build(pi.apply(f), pi.codomain_split());
}

PolyCoeffMatrix PolyCoeffMatrix::build_partial_derivatives(const Polynomial& f,
                                                           const YzSplit& split) {
    if (!f.analyze().is_multilinear)
        throw InputError("partial derivatives matrix needs a multilinear polynomial");
    return build(f, split);
}

Polynomial PolyCoeffMatrix::entry(std::uint64_t ymask, std::uint64_t zmask) const {
    auto it = entries_.find(std::make_pair(ymask, zmask));
    if (it == entries_.end())
        return Polynomial::zero(field_, split_.universe());
    return it->second;
}

std::vector<VarId> PolyCoeffMatrix::entry_variables() const {
    std::set<VarId> vars;
    for (const auto& [key, poly] : entries_) {
        (void)key;
        for (VarId v : poly.support_vars()) vars.insert(v);
    }
    return {vars.begin(), vars.end()};
}

Monomial PolyCoeffMatrix::support_monomial(Side side, std::uint64_t mask) const {
    const auto& vars = side == Side::Y ? split_.y_vars() : split_.z_vars();
    std::vector<Monomial::Term> factors;
    for (std::size_t s = 0; s < vars.size(); ++s)
        if (mask & (std::uint64_t(1) << s)) factors.emplace_back(vars[s], 1);
    return Monomial(std::move(factors));
}

Polynomial PolyCoeffMatrix::reconstruct() const {
    Polynomial f(field_, split_.universe());
    for (const auto& [key, poly] : entries_) {
        Monomial pq = support_monomial(Side::Y, key.first) *
                      support_monomial(Side::Z, key.second);
        for (const auto& [m, c] : poly.terms()) f.add_term(m * pq, c);
    }
    return f;
}

ScalarMatrix PolyCoeffMatrix::substitute(const Substitution& s) const {
    std::vector<std::uint32_t> data(row_masks_.size() * col_masks_.size(), 0);
    for (const auto& [key, poly] : entries_) {
        Polynomial value = poly.substitute(s);
        std::uint32_t c = 0;
        if (!value.is_zero()) {
            if (value.num_terms() != 1 || !value.terms().begin()->first.is_one())
                throw InputError(
                    "substitution leaves a matrix entry non-constant; assign all "
                    "entry variables");
            c = value.terms().begin()->second;
        }
        auto row = std::lower_bound(row_masks_.begin(), row_masks_.end(), key.first) -
                   row_masks_.begin();
        auto col = std::lower_bound(col_masks_.begin(), col_masks_.end(), key.second) -
                   col_masks_.begin();
        data[std::size_t(row) * col_masks_.size() + std::size_t(col)] = c;
    }
    return ScalarMatrix(field_, row_masks_, col_masks_, std::move(data));
}

namespace {

// Entries flattened for fast repeated evaluation: variable references become
// positions into the entry-variable value vector.
struct CompiledTerm {
    std::uint32_t coeff;
    std::vector<std::pair<std::size_t, std::uint32_t>> powers;
};

struct CompiledEntry {
    std::size_t cell; // row * cols + col
    std::vector<CompiledTerm> terms;
};

struct CompiledMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<CompiledEntry> entries;
    std::vector<VarId> vars;

    std::size_t eval_rank(const Field& field, const std::vector<std::uint32_t>& values,
                          std::vector<std::uint32_t>& scratch) const {
        scratch.assign(rows * cols, 0);
        for (const auto& e : entries) {
            std::uint32_t acc = 0;
            for (const auto& t : e.terms) {
                std::uint32_t term = t.coeff;
                for (const auto& [pos, exp] : t.powers)
                    term = field.mul(term, field.pow(values[pos], exp));
                acc = field.add(acc, term);
            }
            scratch[e.cell] = acc;
        }
        return fp_rank(field, rows, cols, scratch);
    }
};

CompiledMatrix compile(const PolyCoeffMatrix& m) {
    CompiledMatrix cm;
    cm.rows = m.row_masks().size();
    cm.cols = m.col_masks().size();
    cm.vars = m.entry_variables();
    std::map<VarId, std::size_t> pos;
    for (std::size_t i = 0; i < cm.vars.size(); ++i) pos[cm.vars[i]] = i;
    for (const auto& [key, poly] : m.entries()) {
        auto row = std::lower_bound(m.row_masks().begin(), m.row_masks().end(),
                                    key.first) -
                   m.row_masks().begin();
        auto col = std::lower_bound(m.col_masks().begin(), m.col_masks().end(),
                                    key.second) -
                   m.col_masks().begin();
        CompiledEntry ce;
        ce.cell = std::size_t(row) * cm.cols + std::size_t(col);
        for (const auto& [mono, c] : poly.terms()) {
            CompiledTerm t;
            t.coeff = c;
            for (const auto& [v, e] : mono.factors()) t.powers.emplace_back(pos[v], e);
            ce.terms.push_back(std::move(t));
        }
        cm.entries.push_back(std::move(ce));
    }
    return cm;
}

void decode_assignment(std::uint64_t index, std::uint32_t p, std::size_t k,
                       std::vector<std::uint32_t>& values) {
    values.assign(k, 0);
    for (std::size_t t = k; t-- > 0;) {
        values[t] = static_cast<std::uint32_t>(index % p);
        index /= p;
    }
}

// Scans [begin, end) in order; returns the best rank, the first index
// attaining it and the number of indices actually evaluated (the scan stops
// once the matrix rank saturates).
struct ChunkResult {
    std::size_t best = 0;
    std::uint64_t first_index = 0;
    std::uint64_t tried = 0;
};

ChunkResult scan_range(const CompiledMatrix& cm, const Field& field,
                       std::uint64_t begin, std::uint64_t end, std::size_t saturation) {
    ChunkResult res;
    res.first_index = begin;
    std::vector<std::uint32_t> values;
    std::vector<std::uint32_t> scratch;
    decode_assignment(begin, field.modulus(), cm.vars.size(), values);
    for (std::uint64_t i = begin; i < end; ++i) {
        std::size_t r = cm.eval_rank(field, values, scratch);
        ++res.tried;
        if (i == begin || r > res.best) {
            res.best = r;
            res.first_index = i;
            if (r >= saturation) break;
        }
        // Odometer step: last variable fastest.
        for (std::size_t t = cm.vars.size(); t-- > 0;) {
            if (++values[t] < field.modulus()) break;
            values[t] = 0;
        }
    }
    return res;
}

} // namespace

MaxrankResult maxrank(const PolyCoeffMatrix& m, const MaxrankOptions& options) {
    const Field field = m.field();
    CompiledMatrix cm = compile(m);
    MaxrankResult result;
    result.matrix_rows = cm.rows;
    result.matrix_cols = cm.cols;
    if (cm.rows == 0 || cm.cols == 0) {
        result.exact = true;
        return result;
    }
    if (cm.rows > options.rank_limit || cm.cols > options.rank_limit)
        throw DimensionLimitError(
            "coefficient matrix is " + std::to_string(cm.rows) + "x" +
            std::to_string(cm.cols) + ", above the rank limit of " +
            std::to_string(options.rank_limit));
    const std::size_t saturation = std::min(cm.rows, cm.cols);
    const std::size_t k = cm.vars.size();
    const std::uint32_t p = field.modulus();

    if (options.mode == MaxrankMode::Exhaustive) {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < k; ++i) {
            unsigned __int128 next = static_cast<unsigned __int128>(total) * p;
            if (next > options.budget)
                throw BudgetExceededError(
                    "exhaustive search needs " + std::to_string(p) + "^" +
                    std::to_string(k) + " substitutions, above the budget of " +
                    std::to_string(options.budget));
            total = static_cast<std::uint64_t>(next);
        }
        unsigned jobs = options.jobs == 0 ? 1 : options.jobs;
        if (std::uint64_t(jobs) > total) jobs = static_cast<unsigned>(total);
        std::vector<ChunkResult> chunks(jobs);
        if (jobs == 1) {
            chunks[0] = scan_range(cm, field, 0, total, saturation);
        } else {
            std::vector<std::thread> threads;
            threads.reserve(jobs);
            for (unsigned j = 0; j < jobs; ++j) {
                std::uint64_t begin = total / jobs * j;
                std::uint64_t end = j + 1 == jobs ? total : total / jobs * (j + 1);
                threads.emplace_back([&, j, begin, end] {
                    chunks[j] = scan_range(cm, field, begin, end, saturation);
                });
            }
            for (auto& t : threads) t.join();
        }
        ChunkResult best = chunks[0];
        for (unsigned j = 1; j < jobs; ++j) {
            if (chunks[j].best > best.best)
                best = {chunks[j].best, chunks[j].first_index, best.tried};
            best.tried += chunks[j].tried;
        }
        result.value = best.best;
        result.exact = true;
        result.substitutions_tried = best.tried;
        std::vector<std::uint32_t> values;
        decode_assignment(best.first_index, p, k, values);
        for (std::size_t i = 0; i < k; ++i) result.witness[cm.vars[i]] = values[i];
        return result;
    }

    // Sampled mode: a reproducible stream of independent substitutions.
    std::vector<std::uint32_t> values(k, 0);
    std::vector<std::uint32_t> scratch;
    bool have = false;
    Substitution witness;
    for (std::uint64_t trial = 0; trial < options.trials; ++trial) {
        Rng rng(derive_seed(options.seed, trial));
        for (std::size_t i = 0; i < k; ++i)
            values[i] = static_cast<std::uint32_t>(rng.below(p));
        std::size_t r = cm.eval_rank(field, values, scratch);
        ++result.substitutions_tried;
        if (!have || r > result.value) {
            have = true;
            result.value = r;
            witness.clear();
            for (std::size_t i = 0; i < k; ++i) witness[cm.vars[i]] = values[i];
            if (r >= saturation) {
                result.exact = true;
                break;
            }
        }
    }
    result.witness = std::move(witness);
    return result;
}

std::string to_csv(const PolyCoeffMatrix& m) {
    std::string out = "y_support,z_support,entry\n";
    const auto& universe = *m.split().universe();
    for (const auto& [key, poly] : m.entries()) {
        out += to_text(m.support_monomial(Side::Y, key.first), universe);
        out += ",";
        out += to_text(m.support_monomial(Side::Z, key.second), universe);
        out += ",";
        out += to_text(poly);
        out += "\n";
    }
    return out;
}

} // namespace maxrank
