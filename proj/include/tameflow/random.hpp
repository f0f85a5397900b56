#ifndef TAMEFLOW_RANDOM_HPP
#define TAMEFLOW_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace tameflow {

/// Seeded generator passed explicitly to every sampling routine.
///
/// The conversions to doubles are written out by hand instead of going
/// through <random> distributions, whose output is implementation-defined,
/// so that reports are byte-stable across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform on the open interval (0, 1).
    double uniform_open() {
        double u = 0.0;
        while (u == 0.0)
            u = uniform();
        return u;
    }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    /// Standard normal via Box-Muller (no cached second value).
    double normal() {
        double u1 = uniform_open();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform point in the open standard simplex with n vertices.
    std::vector<double> simplex_point(std::size_t n) {
        std::vector<double> w(n);
        double total = 0.0;
        for (auto& x : w) {
            x = -std::log(uniform_open());
            total += x;
        }
        for (auto& x : w)
            x /= total;
        return w;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace tameflow

#endif
