#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "ssqcv/core.hpp"

namespace ssqcv {

// Seedable generator with platform-independent output.
//
// The standard <random> distributions are implementation-defined, so the
// variates here are derived directly from the 64-bit engine output:
// uniforms from the top 53 bits, normals by Box-Muller (two uniforms each,
// no caching), bounded integers by rejection.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

    Vector normal_vector(std::size_t n) {
        Vector v(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v[i] = normal();
        return v;
    }

    /// Uniform point on the unit sphere in R^n.
    Vector sphere_point(std::size_t n) {
        for (;;) {
            Vector v = normal_vector(n);
            const double norm = v.norm();
            if (norm > 0.0)
                return v / norm;
        }
    }

    /// Uniform permutation by Fisher-Yates.
    Permutation permutation(std::size_t n) {
        std::vector<int> m(n);
        for (std::size_t i = 0; i < n; ++i)
            m[i] = static_cast<int>(i);
        for (std::size_t i = n; i > 1; --i)
            std::swap(m[i - 1], m[below(i)]);
        return Permutation(std::move(m));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ssqcv
