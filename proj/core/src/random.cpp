#include "hrgen/random.hpp"

#include <bit>
#include <vector>

#include "hrgen/error.hpp"

namespace hrgen {

namespace {

std::mt19937_64 seeded(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seeded(seed)) {}

RandomSource RandomSource::split(std::uint64_t index) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x73706c74u};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return RandomSource((static_cast<std::uint64_t>(words[1]) << 32) | words[0]);
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
    if (bound == 0) {
        throw InputError("uniform_below: bound must be positive");
    }
    const int bits = std::bit_width(bound - 1);
    const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    while (true) {
        const std::uint64_t r = engine_() & mask;
        if (r < bound) {
            return r;
        }
    }
}

mpz_class RandomSource::uniform_below(const mpz_class& bound) {
    if (sgn(bound) <= 0) {
        throw InputError("uniform_below: bound must be positive");
    }
    if (bound.fits_ulong_p()) {
        return mpz_class(static_cast<unsigned long>(uniform_below(static_cast<std::uint64_t>(bound.get_ui()))));
    }
    const mpz_class top = bound - 1;
    const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const std::size_t spare = words * 64 - bits;
    std::vector<std::uint64_t> buffer(words);
    mpz_class r;
    while (true) {
        for (auto& w : buffer) {
            w = engine_();
        }
        // most significant word first
        buffer[0] &= ~std::uint64_t{0} >> spare;
        mpz_import(r.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, buffer.data());
        if (r < bound) {
            return r;
        }
    }
}

}  // namespace hrgen
