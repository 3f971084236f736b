#pragma once

#include <cstdint>

namespace fdhom {

bool is_prime_u32(uint32_t n);

// Prime field GF(p), 2 <= p < 2^31. Residues are stored in [0, p);
// intermediate products fit in 64 bits.
struct Field {
    uint32_t p = 2;

    Field() = default;
    explicit Field(uint32_t modulus);

    bool operator==(const Field&) const = default;

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;  // p < 2^31, no overflow
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const;  // a != 0
    uint32_t reduce(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<uint32_t>(r);
    }
};

}  // namespace fdhom
