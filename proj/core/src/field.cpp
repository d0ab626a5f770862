#include "maxrank/field.hpp"

namespace maxrank {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

Field::Field(std::uint32_t modulus) : p_(modulus) {
    if (modulus < 2 || std::uint64_t(modulus) >= (1ull << 31))
        throw InputError("field modulus must satisfy 2 <= p < 2^31, got " +
                         std::to_string(modulus));
    if (!is_prime(modulus))
        throw InputError("field modulus must be prime, got " + std::to_string(modulus));
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint64_t base = a % p_, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return std::uint32_t(acc);
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw InputError("division by zero in GF(" + std::to_string(p_) + ")");
    return pow(a, p_ - 2);
}

} // namespace maxrank
