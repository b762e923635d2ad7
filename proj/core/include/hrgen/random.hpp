#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace hrgen {

// Seedable, splittable source of uniform integers.
//
// The generator is std::mt19937_64 seeded through std::seed_seq with the
// two 32-bit halves of the seed. split(i) derives an independent stream
// from (seed, i), so sample i of a batch never depends on how much
// randomness the others used.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }
    RandomSource split(std::uint64_t index) const;

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, bound), by rejection from whole 64-bit draws masked
    // to the bit length of bound. Throws InputError unless bound > 0.
    mpz_class uniform_below(const mpz_class& bound);
    std::uint64_t uniform_below(std::uint64_t bound);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace hrgen
