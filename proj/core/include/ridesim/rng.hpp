#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "ridesim/util.hpp"

namespace ridesim {

/// Deterministic random source. Wraps std::mt19937_64 (whose sequence is
/// fixed by the standard) and implements the distributions itself, because
/// std::uniform_*_distribution output is implementation-defined and trace
/// generation must be bit-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [lo, hi). 53-bit mantissa fill.
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    /// Uniform integer in [lo, hi], inclusive. Masked rejection sampling.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw Error("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo);
        if (span == UINT64_MAX) return static_cast<std::int64_t>(next_u64());
        std::uint64_t mask = ~std::uint64_t{0};
        const std::uint64_t n = span + 1;
        for (std::uint64_t bit = 63; bit > 0; --bit) {
            if (n >> bit) break;
            mask >>= 1;
        }
        while (true) {
            const std::uint64_t draw = next_u64() & mask;
            if (draw <= span) return lo + static_cast<std::int64_t>(draw);
        }
    }

    /// Draws an index from a discrete distribution. `weights` need not be
    /// normalized; they must be non-negative with a positive sum.
    std::size_t categorical(std::span<const double> weights) {
        double total = 0;
        for (double w : weights) {
            if (w < 0) throw Error("categorical: negative weight");
            total += w;
        }
        if (total <= 0) throw Error("categorical: weights sum to zero");
        const double u = uniform(0.0, total);
        double acc = 0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return weights.size() - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ridesim
