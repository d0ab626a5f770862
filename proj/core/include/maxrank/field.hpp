#pragma once

#include <cstdint>
#include <string>

#include "maxrank/errors.hpp"

namespace maxrank {

bool is_prime(std::uint64_t n);

// A prime field GF(p), 2 <= p < 2^31. Residues are plain uint32_t values in
// [0, p); products fit in 64 bits.
class Field {
public:
    explicit Field(std::uint32_t modulus);

    std::uint32_t modulus() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        return s >= p_ ? std::uint32_t(s - p_) : std::uint32_t(s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return std::uint32_t((std::uint64_t(a) * b) % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const;

    // Reduces an arbitrary signed integer into [0, p).
    std::uint32_t reduce(std::int64_t v) const {
        std::int64_t r = v % std::int64_t(p_);
        if (r < 0) r += p_;
        return std::uint32_t(r);
    }

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

private:
    std::uint32_t p_;
};

inline void require_same_field(const Field& a, const Field& b, const char* what) {
    if (a != b)
        throw FieldMismatchError(std::string(what) + ": operands live in GF(" +
                                 std::to_string(a.modulus()) + ") and GF(" +
                                 std::to_string(b.modulus()) + ")");
}

// A field element that knows its field. Arithmetic between scalars of
// different fields throws FieldMismatchError.
class Scalar {
public:
    Scalar(std::uint32_t value, Field field) : v_(value % field.modulus()), f_(field) {}

    std::uint32_t value() const { return v_; }
    const Field& field() const { return f_; }

    Scalar operator+(const Scalar& o) const {
        require_same_field(f_, o.f_, "scalar add");
        return Scalar(f_.add(v_, o.v_), f_);
    }
    Scalar operator-(const Scalar& o) const {
        require_same_field(f_, o.f_, "scalar sub");
        return Scalar(f_.sub(v_, o.v_), f_);
    }
    Scalar operator*(const Scalar& o) const {
        require_same_field(f_, o.f_, "scalar mul");
        return Scalar(f_.mul(v_, o.v_), f_);
    }
    Scalar operator-() const { return Scalar(f_.neg(v_), f_); }
    Scalar inverse() const { return Scalar(f_.inv(v_), f_); }

    bool operator==(const Scalar& o) const { return v_ == o.v_ && f_ == o.f_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

private:
    std::uint32_t v_;
    Field f_;
};

} // namespace maxrank
