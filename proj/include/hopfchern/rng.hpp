#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace hopfchern {

/// Deterministic random stream: mt19937_64 plus a hand-rolled Box-Muller
/// transform, so the generated values do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw in [0, 1).
    double uniform() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

    std::complex<double> normal_complex() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    std::mt19937_64 gen_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace hopfchern
