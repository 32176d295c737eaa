#pragma once

// Interface for positively homogeneous integrands. The moment engines and
// the Lemma-style identity checks are templated on this concept, so they
// work for homogeneous polynomials and for non-polynomial positively
// homogeneous functions (f(lambda x) = lambda^deg f(x) for lambda > 0) alike.

#include <cmath>
#include <concepts>
#include <span>

#include "levelset/polynomial.hpp"

namespace levelset {

template <typename F>
concept PositivelyHomogeneous = requires(const F& f, std::span<const double> x) {
    { f.dimension() } -> std::convertible_to<int>;
    { f.degree() } -> std::convertible_to<double>;
    { f(x) } -> std::convertible_to<double>;
};

template <typename F>
concept HasAnalyticGradient =
    requires(const F& f, std::span<const double> x, std::span<double> g) { f.gradient(x, g); };

static_assert(PositivelyHomogeneous<HomogeneousPolynomial>);
static_assert(HasAnalyticGradient<HomogeneousPolynomial>);

// f(x) = ||x||_2, positively homogeneous of degree 1; its sublevel set is
// the unit ball. Used to exercise the identity checks beyond polynomials.
class EuclideanNorm {
public:
    explicit EuclideanNorm(int n) : n_(n) {
        if (n_ < 1) throw DimensionMismatch("dimension must be >= 1");
    }

    int dimension() const { return n_; }
    double degree() const { return 1.0; }

    double operator()(std::span<const double> x) const {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }

private:
    int n_;
};

static_assert(PositivelyHomogeneous<EuclideanNorm>);

} // namespace levelset
