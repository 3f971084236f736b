#pragma once

#include <cstdint>

namespace fdhom {

// splitmix64 stream. Fully specified by the seed, so reports built from the
// same seed are byte-identical on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

    uint32_t residue(uint32_t p) { return static_cast<uint32_t>(below(p)); }

    uint32_t nonzero_residue(uint32_t p) {
        return static_cast<uint32_t>(1 + below(p - 1));
    }

    // Independent stream derived from this one; advancing the child does not
    // advance the parent.
    Rng fork(uint64_t salt) {
        Rng child(state_ ^ (salt * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        child.next();
        return child;
    }

private:
    uint64_t state_;
};

}  // namespace fdhom
