#pragma once

// Homogeneous polynomials g(x) = sum_{|beta| = d} g_beta x^beta with sparse
// coefficient storage. These are the recovery targets and the integrands of
// the moment engines.

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "levelset/errors.hpp"
#include "levelset/multi_index.hpp"
#include "levelset/numeric.hpp"

namespace levelset {

class HomogeneousPolynomial {
public:
    using CoeffMap = std::map<MultiIndex, double, GradedLess>;

    // Keys must all have |beta| = d; absent keys are zero coefficients.
    // Degree parity and sign of g are NOT checked here: infeasible inputs
    // (odd d, sign-changing g) must be constructible so that the
    // compactness checks downstream have something to reject.
    HomogeneousPolynomial(int n, int d, CoeffMap coeffs)
        : n_(n), d_(d), coeffs_(std::move(coeffs)) {
        if (n_ < 1) throw DimensionMismatch("dimension must be >= 1");
        if (d_ < 1) throw ParseError("degree must be >= 1");
        for (const auto& [beta, c] : coeffs_) {
            if (beta.dimension() != n_) {
                throw DimensionMismatch("coefficient index " + beta.str() +
                                        " has wrong dimension (expected " + std::to_string(n_) + ")");
            }
            if (beta.degree() != d_) {
                throw ParseError("coefficient index " + beta.str() + " has degree " +
                                 std::to_string(beta.degree()) + ", expected " + std::to_string(d_));
            }
        }
    }

    int dimension() const { return n_; }
    int degree() const { return d_; }
    const CoeffMap& coeffs() const { return coeffs_; }

    double coeff(const MultiIndex& beta) const {
        auto it = coeffs_.find(beta);
        return it == coeffs_.end() ? 0.0 : it->second;
    }

    // sum_beta c_beta x^beta. Powers are formed by repeated multiplication,
    // so sign symmetry of even powers is exact in floating point.
    double operator()(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != n_) {
            throw DimensionMismatch("point has dimension " + std::to_string(x.size()) +
                                    ", polynomial has dimension " + std::to_string(n_));
        }
        double acc = 0.0;
        for (const auto& [beta, c] : coeffs_) {
            double term = c;
            for (int j = 0; j < n_; ++j) term *= pow_int(x[static_cast<std::size_t>(j)], beta[static_cast<std::size_t>(j)]);
            acc += term;
        }
        return acc;
    }

    double operator()(const std::vector<double>& x) const {
        return (*this)(std::span<const double>(x));
    }

    // grad g(x)[i] = sum_beta c_beta beta_i x^(beta - e_i)
    void gradient(std::span<const double> x, std::span<double> out) const {
        for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = 0.0;
        for (const auto& [beta, c] : coeffs_) {
            for (int i = 0; i < n_; ++i) {
                const int bi = beta[static_cast<std::size_t>(i)];
                if (bi == 0) continue;
                double term = c * bi;
                for (int j = 0; j < n_; ++j) {
                    const int e = beta[static_cast<std::size_t>(j)] - (j == i ? 1 : 0);
                    term *= pow_int(x[static_cast<std::size_t>(j)], e);
                }
                out[static_cast<std::size_t>(i)] += term;
            }
        }
    }

    // Coefficient vector in graded order, length C(n+d-1, d).
    std::vector<double> dense_coeffs() const {
        std::vector<double> v;
        const auto idx = enumerate_degree(n_, d_);
        v.reserve(idx.size());
        for (const auto& beta : idx) v.push_back(coeff(beta));
        return v;
    }

    HomogeneousPolynomial operator+(const HomogeneousPolynomial& other) const {
        if (n_ != other.n_ || d_ != other.d_) {
            throw DimensionMismatch("polynomial sum requires matching dimension and degree");
        }
        CoeffMap sum = coeffs_;
        for (const auto& [beta, c] : other.coeffs_) sum[beta] += c;
        return HomogeneousPolynomial(n_, d_, std::move(sum));
    }

    HomogeneousPolynomial operator*(double s) const {
        CoeffMap scaled = coeffs_;
        for (auto& [beta, c] : scaled) c *= s;
        return HomogeneousPolynomial(n_, d_, std::move(scaled));
    }

private:
    int n_;
    int d_;
    CoeffMap coeffs_;
};

inline HomogeneousPolynomial operator*(double s, const HomogeneousPolynomial& p) { return p * s; }

// Convenience builder from (exponents, coefficient) pairs.
inline HomogeneousPolynomial make_polynomial(
    int n, int d, const std::vector<std::pair<std::vector<int>, double>>& terms) {
    HomogeneousPolynomial::CoeffMap m;
    for (const auto& [e, c] : terms) {
        auto [it, inserted] = m.emplace(MultiIndex(e), c);
        if (!inserted) throw ParseError("duplicate term " + it->first.str());
    }
    return HomogeneousPolynomial(n, d, std::move(m));
}

// Samples (x, lambda) with lambda in (0, 2] and checks
// |g(lambda x) - lambda^d g(x)| <= rtol |lambda^d g(x)| + atol.
inline bool homogeneity_check(const HomogeneousPolynomial& p, int samples, std::uint64_t seed,
                              double rtol = 1e-9, double atol = 1e-12) {
    if (samples < 1) throw ParseError("homogeneity_check requires samples >= 1");
    const CounterRng rng(seed);
    const int n = p.dimension();
    std::vector<double> x(static_cast<std::size_t>(n)), lx(static_cast<std::size_t>(n));
    std::uint64_t ctr = 0;
    for (int s = 0; s < samples; ++s) {
        for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = rng.uniform(ctr++, -1.0, 1.0);
        const double lambda = 2.0 * (1.0 - rng.uniform(ctr++)); // (0, 2]
        for (int j = 0; j < n; ++j) lx[static_cast<std::size_t>(j)] = lambda * x[static_cast<std::size_t>(j)];
        const double expected = pow_int(lambda, p.degree()) * p(x);
        if (std::abs(p(lx) - expected) > rtol * std::abs(expected) + atol) return false;
    }
    return true;
}

} // namespace levelset
