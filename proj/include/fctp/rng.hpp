#pragma once

#include <cstdint>

#include "fctp/errors.hpp"
#include "fctp/rational.hpp"

namespace fctp {

// splitmix64 with Lemire's unbiased bounded sampling. Fixed constants keep
// every generated artifact reproducible byte for byte across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, s), unbiased.
    std::uint64_t bounded(std::uint64_t s) {
        if (s == 0) raise(Errc::validation_error, "bounded(0)");
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * s;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < s) {
            std::uint64_t t = (0 - s) % s;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next()) * s;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform over the inclusive range [lo, hi].
    Cap uniform(Cap lo, Cap hi) {
        if (lo > hi) raise(Errc::validation_error, "uniform: empty range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<Cap>(bounded(span));
    }

private:
    std::uint64_t state_;
};

}  // namespace fctp
