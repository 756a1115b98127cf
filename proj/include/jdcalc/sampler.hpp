#pragma once

#include "jdcalc/extbundle.hpp"

#include <cstdint>

namespace jdcalc {

/// Deterministic pseudo-random generator (splitmix64) with platform
/// independent draws: (seed, draw sequence) fully determines every sample.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    /// Integer in [lo, hi].
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }

    Rational small_rational() {
        int num = range(-3, 3);
        int den = range(1, 3);
        return Rational(num, den);
    }

    Rational nonzero_rational() {
        for (;;) {
            Rational r = small_rational();
            if (r != 0) return r;
        }
    }

    Poly poly(const Chart& chart, int max_degree, int terms = 3);
    MultiVec multivec(const Chart& chart, int grade, int max_degree);
    Form form(const Chart& chart, int grade, int max_degree);
    ExtVec ext_vec(const Chart& chart, int grade, int max_degree);
    ExtForm ext_form(const Chart& chart, int grade, int max_degree);
    std::vector<Rational> point(const Chart& chart);

private:
    std::uint64_t state_;
};

} // namespace jdcalc
