#pragma once

// Test-only oracles, independent of the library's quadrature and solver
// paths: closed-form ball/ellipsoid monomial integrals via Gamma functions,
// adaptive Simpson quadrature for one-dimensional reference values, a
// Cramer-rule 3x3 solve, and seeded ensemble generators.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "levelset/moments.hpp"
#include "levelset/numeric.hpp"
#include "levelset/polynomial.hpp"

namespace oracles {

// int_{B^n} u^beta du = prod_i Gamma((beta_i+1)/2) / Gamma((n+|beta|)/2 + 1)
// when every beta_i is even, else 0.
inline double ball_moment(const std::vector<int>& beta) {
    const int n = static_cast<int>(beta.size());
    int total = 0;
    double num = 1.0;
    for (int b : beta) {
        if (b % 2 != 0) return 0.0;
        total += b;
        num *= std::tgamma((b + 1) / 2.0);
    }
    return num / std::tgamma((n + total) / 2.0 + 1.0);
}

// Moments of {x : x^T Q x <= 1} for symmetric positive definite Q, through
// the substitution x = Q^{-1/2} u mapping to the unit ball and multinomial
// expansion of the transformed monomial.
inline double ellipsoid_moment(const Eigen::MatrixXd& Q, const std::vector<int>& alpha) {
    const int n = static_cast<int>(alpha.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
    if (es.eigenvalues().minCoeff() <= 0.0) throw std::invalid_argument("Q must be positive definite");
    const Eigen::MatrixXd A = es.operatorInverseSqrt(); // Q^{-1/2}, symmetric

    // Expand prod_i (sum_j A_ij u_j)^{alpha_i} as a polynomial in u.
    std::map<std::vector<int>, double> poly{{std::vector<int>(alpha.size(), 0), 1.0}};
    for (int i = 0; i < n; ++i) {
        for (int rep = 0; rep < alpha[static_cast<std::size_t>(i)]; ++rep) {
            std::map<std::vector<int>, double> next;
            for (const auto& [beta, c] : poly) {
                for (int j = 0; j < n; ++j) {
                    const double aij = A(i, j);
                    if (aij == 0.0) continue;
                    auto gamma = beta;
                    gamma[static_cast<std::size_t>(j)] += 1;
                    next[gamma] += c * aij;
                }
            }
            poly = std::move(next);
        }
    }

    double integral = 0.0;
    for (const auto& [beta, c] : poly) integral += c * ball_moment(beta);
    return A.determinant() * integral;
}

// Moments of the axis-aligned ellipse {x^2/a^2 + y^2/b^2 <= 1}.
inline double ellipse_moment(double a, double b, int p, int q) {
    if (p % 2 != 0 || q % 2 != 0) return 0.0;
    return oracles::ball_moment({p, q}) * levelset::pow_int(a, p + 1) * levelset::pow_int(b, q + 1);
}

inline double disk_moment(int p, int q) { return ellipse_moment(1.0, 1.0, p, q); }

// Classic adaptive Simpson with an absolute tolerance.
namespace detail {
template <typename F>
double simpson(F&& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(F&& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
             int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
} // namespace detail

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return detail::adapt(f, a, b, fa, fm, fb, detail::simpson(f, a, b, fa, fm, fb), tol, 48);
}

// Cramer's rule for 3x3 systems; the brute-force route against which the
// factorization-based solver is checked.
inline Eigen::Vector3d cramer3(const Eigen::Matrix3d& A, const Eigen::Vector3d& b) {
    const double det = A.determinant();
    Eigen::Vector3d x;
    for (int c = 0; c < 3; ++c) {
        Eigen::Matrix3d Ac = A;
        Ac.col(c) = b;
        x(c) = Ac.determinant() / det;
    }
    return x;
}

// Seeded positive definite quadratic form g(x) = x^T Q x with
// Q = B^T B + (trace(B^T B)/(2n)) I; the regularization keeps the
// conditioning mild so quadrature is not the limiting factor.
inline Eigen::MatrixXd random_spd_matrix(int n, std::uint64_t seed) {
    levelset::CounterRng rng(seed);
    Eigen::MatrixXd B(n, n);
    std::uint64_t ctr = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) B(i, j) = rng.uniform(ctr++, -1.0, 1.0);
    }
    Eigen::MatrixXd Q = B.transpose() * B;
    Q += (Q.trace() / (2.0 * n)) * Eigen::MatrixXd::Identity(n, n);
    return Q;
}

inline levelset::HomogeneousPolynomial quadratic_from_matrix(const Eigen::MatrixXd& Q) {
    const int n = static_cast<int>(Q.rows());
    levelset::HomogeneousPolynomial::CoeffMap coeffs;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            std::vector<int> e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] += 1;
            e[static_cast<std::size_t>(j)] += 1;
            coeffs.emplace(levelset::MultiIndex(e), i == j ? Q(i, i) : 2.0 * Q(i, j));
        }
    }
    return levelset::HomogeneousPolynomial(n, 2, std::move(coeffs));
}

// Seeded positive quartic in two variables: q1^2 + q2^2 + eps (x^4 + y^4)
// with q1, q2 random (possibly indefinite) quadratic forms.
inline levelset::HomogeneousPolynomial random_positive_quartic(std::uint64_t seed,
                                                               double eps = 0.2) {
    levelset::CounterRng rng(seed);
    double c[6];
    for (int i = 0; i < 6; ++i) c[i] = rng.uniform(static_cast<std::uint64_t>(i), -1.0, 1.0);
    auto square_terms = [](double a, double b, double cc, double coef[5]) {
        // (a x^2 + b xy + c y^2)^2 in graded order x^4 .. y^4
        coef[0] = a * a;
        coef[1] = 2.0 * a * b;
        coef[2] = 2.0 * a * cc + b * b;
        coef[3] = 2.0 * b * cc;
        coef[4] = cc * cc;
    };
    double q1[5], q2[5];
    square_terms(c[0], c[1], c[2], q1);
    square_terms(c[3], c[4], c[5], q2);
    const double coef[5] = {q1[0] + q2[0] + eps, q1[1] + q2[1], q1[2] + q2[2], q1[3] + q2[3],
                            q1[4] + q2[4] + eps};
    return levelset::make_polynomial(2, 4,
                                     {{{4, 0}, coef[0]},
                                      {{3, 1}, coef[1]},
                                      {{2, 2}, coef[2]},
                                      {{1, 3}, coef[3]},
                                      {{0, 4}, coef[4]}});
}

inline constexpr double kPi = std::numbers::pi;

// Analytic moment vector of {x^T Q x <= 1} for the requested exact orders.
inline levelset::MomentVector analytic_ellipsoid_moments(const Eigen::MatrixXd& Q,
                                                         const std::set<int>& orders) {
    const int n = static_cast<int>(Q.rows());
    levelset::MomentVector mv(n, levelset::Provenance::analytic);
    for (int o : orders) {
        for (const auto& alpha : levelset::enumerate_degree(n, o)) {
            mv.set(alpha, ellipsoid_moment(Q, alpha.exponents()));
        }
    }
    return mv;
}

inline levelset::MomentVector analytic_disk_moments(const std::set<int>& orders) {
    return analytic_ellipsoid_moments(Eigen::MatrixXd::Identity(2, 2), orders);
}

} // namespace oracles
