#pragma once

// Small numeric utilities shared across the library: integer powers,
// binomial coefficients, compensated summation, and a counter-based RNG.

#include <cmath>
#include <cstdint>
#include <cstddef>

namespace levelset {

// x^e by repeated multiplication (exact sign handling, no exp/log detour).
inline double pow_int(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

// C(n, k) as an exact 64-bit integer. Sizes in this library are tiny
// (monomial counts), so overflow is not a practical concern.
inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

// Neumaier compensated accumulator. Used for all quadrature and Monte Carlo
// reductions; summation order is fixed by the (serial) call sequence, which
// keeps results deterministic.
class NeumaierSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

} // namespace detail

// Counter-based RNG (splitmix64 finalizer applied to seed + counter).
// Stateless: the value at any counter is independent of evaluation order,
// so sampling loops stay reproducible no matter how they are scheduled.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return detail::mix64(seed_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
    }

    // Uniform on [0, 1).
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

private:
    std::uint64_t seed_;
};

} // namespace levelset
