#include "maxrank/poly_text.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "maxrank/errors.hpp"

namespace maxrank {

namespace {

struct RawTerm {
    bool negative = false;
    bool has_coeff = false;
    std::uint64_t coeff = 1;
    std::vector<std::pair<std::string, std::uint32_t>> factors;
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::vector<RawTerm> run() {
        std::vector<RawTerm> terms;
        skip_ws();
        if (done()) throw ParseError("empty polynomial text");
        bool neg = eat_sign(false);
        terms.push_back(term(neg));
        skip_ws();
        while (!done()) {
            neg = eat_sign(true);
            terms.push_back(term(neg));
            skip_ws();
        }
        return terms;
    }

private:
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + " at position " + std::to_string(pos_));
    }

    bool eat_sign(bool required) {
        skip_ws();
        if (!done() && (peek() == '+' || peek() == '-')) {
            bool neg = peek() == '-';
            ++pos_;
            return neg;
        }
        if (required) fail("expected '+' or '-'");
        return false;
    }

    std::uint64_t number() {
        skip_ws();
        if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a number");
        std::uint64_t v = 0;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            std::uint64_t digit = static_cast<std::uint64_t>(peek() - '0');
            if (v > (UINT64_MAX - digit) / 10) fail("number too large");
            v = v * 10 + digit;
            ++pos_;
        }
        return v;
    }

    std::string var_name() {
        std::string s;
        s.push_back(peek());
        ++pos_;
        while (!done()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                s.push_back(c);
                ++pos_;
            } else {
                break;
            }
        }
        return s;
    }

    RawTerm term(bool negative) {
        RawTerm t;
        t.negative = negative;
        skip_ws();
        if (done()) fail("expected a term");
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            t.has_coeff = true;
            t.coeff = number();
        }
        bool expect_factor = false;
        while (true) {
            skip_ws();
            if (!done() && peek() == '*') {
                ++pos_;
                skip_ws();
                expect_factor = true;
            }
            if (done() || !std::isalpha(static_cast<unsigned char>(peek()))) break;
            std::string name = var_name();
            std::uint32_t exp = 1;
            skip_ws();
            if (!done() && peek() == '^') {
                ++pos_;
                std::uint64_t e = number();
                if (e > UINT32_MAX) fail("exponent too large");
                exp = static_cast<std::uint32_t>(e);
            }
            t.factors.emplace_back(std::move(name), exp);
            expect_factor = false;
        }
        if (expect_factor) fail("expected a variable after '*'");
        if (!t.has_coeff && t.factors.empty()) fail("expected a term");
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

Polynomial assemble(const std::vector<RawTerm>& terms, Field field,
                    const UniversePtr& universe) {
    Polynomial p(field, universe);
    for (const auto& t : terms) {
        std::uint32_t c = field.reduce(t.coeff % field.modulus());
        if (t.negative) c = field.neg(c);
        std::vector<Monomial::Term> factors;
        factors.reserve(t.factors.size());
        for (const auto& [name, exp] : t.factors)
            factors.emplace_back(universe->require(name), exp);
        p.add_term(Monomial(std::move(factors)), c);
    }
    return p;
}

} // namespace

Polynomial parse_polynomial(std::string_view text, Field field) {
    auto terms = Parser(text).run();
    std::vector<std::string> names;
    std::map<std::string, bool> seen;
    for (const auto& t : terms) {
        for (const auto& [name, exp] : t.factors) {
            (void)exp;
            if (!seen.emplace(name, true).second) continue;
            names.push_back(name);
        }
    }
    return assemble(terms, field, VarUniverse::of(std::move(names)));
}

Polynomial parse_polynomial(std::string_view text, Field field, UniversePtr universe) {
    auto terms = Parser(text).run();
    return assemble(terms, field, universe);
}

std::string to_text(const Monomial& m, const VarUniverse& universe) {
    std::string s;
    for (const auto& [v, e] : m.factors()) {
        if (!s.empty()) s += "*";
        s += universe.name(v);
        if (e >= 2) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

std::string to_text(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms()) {
        if (!s.empty()) s += " + ";
        if (m.is_one()) {
            s += std::to_string(c);
        } else if (c == 1) {
            s += to_text(m, *p.universe());
        } else {
            s += std::to_string(c) + "*" + to_text(m, *p.universe());
        }
    }
    return s;
}

} // namespace maxrank
