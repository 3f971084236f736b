#include "fdhom/gf.hpp"

#include <stdexcept>
#include <string>

namespace fdhom {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

Field::Field(uint32_t modulus) : p(modulus) {
    if (modulus < 2 || modulus >= (1u << 31) || !is_prime_u32(modulus))
        throw std::invalid_argument("Field: modulus " + std::to_string(modulus) +
                                    " is not a prime in [2, 2^31)");
}

uint32_t Field::pow(uint32_t a, uint64_t e) const {
    uint64_t base = a % p, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(acc);
}

uint32_t Field::inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("Field::inv of zero");
    return pow(a, p - 2);
}

}  // namespace fdhom
