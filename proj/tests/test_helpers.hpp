#pragma once

#include <complex>
#include <numbers>
#include <random>

namespace testutil {

using Complex = std::complex<double>;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline Complex random_unit(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
    return std::polar(1.0, dist(gen));
}

// alpha uniform in the disc of the given radius
inline Complex random_disc(std::mt19937_64& gen, double radius = 0.95) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    return std::polar(radius * std::sqrt(unit(gen)), ang(gen));
}

inline double random_real(std::mt19937_64& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

}  // namespace testutil
