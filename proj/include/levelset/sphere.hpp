#pragma once

// Quadrature node sets on the unit sphere S^{n-1}.
//
// n = 2: midpoint rule in angle (equivalent to the uniform trapezoid on a
// periodic integrand, so spectrally accurate for smooth g).
// n >= 3: recursive product rule through the decomposition
//     theta = (u, sqrt(1-u^2) * omega),  omega in S^{n-2},
//     dsigma_{n-1} = (1-u^2)^{(n-3)/2} du dsigma_{n-2},
// with Gauss-Jacobi nodes in u (Golub-Welsch on the Jacobi recurrence) and
// the circle rule at the base.
//
// Nodes are stored as sign orbits: one representative per orbit with all
// coordinates strictly positive, expanded to the 2^n sign patterns at use
// sites. Consumers that reduce over whole orbits get exact cancellation of
// odd monomials whenever the integrand shares the reflection symmetry.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "levelset/errors.hpp"

namespace levelset {

struct SphereRule {
    int n = 0;
    std::size_t orbits = 0;
    std::vector<double> coords;  // orbits * n, strictly positive coordinates
    std::vector<double> weights; // per signed node; orbit total is weight * 2^n

    std::span<const double> orbit_coords(std::size_t b) const {
        return {coords.data() + b * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }

    std::size_t node_count() const { return orbits << n; }
};

namespace detail {

// Nodes/weights for int_{-1}^{1} f(u) (1-u^2)^a du by Golub-Welsch on the
// symmetric Jacobi matrix; recurrence beta_k = k(k+2a)/((2k+2a)^2 - 1).
// Returns only u > 0; the sign orbit supplies the mirror nodes, and pairing
// the eigen-solver's near-symmetric output keeps reflection exact.
inline void gauss_jacobi_positive(int count, double a, std::vector<double>& nodes,
                                  std::vector<double>& weights) {
    if (count < 2 || count % 2 != 0) throw Error("Gauss-Jacobi node count must be even and >= 2");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(count, count);
    for (int k = 1; k < count; ++k) {
        const double kk = static_cast<double>(k);
        const double beta = kk * (kk + 2.0 * a) / ((2.0 * kk + 2.0 * a) * (2.0 * kk + 2.0 * a) - 1.0);
        J(k - 1, k) = J(k, k - 1) = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::pow(2.0, 2.0 * a + 1.0) * std::beta(a + 1.0, a + 1.0);

    nodes.clear();
    weights.clear();
    const int half = count / 2;
    for (int i = 0; i < half; ++i) {
        // eigenvalues come sorted ascending; i-th from each end mirror
        const double u_neg = es.eigenvalues()(i);
        const double u_pos = es.eigenvalues()(count - 1 - i);
        const double w_neg = mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        const double w_pos = mu0 * es.eigenvectors()(0, count - 1 - i) * es.eigenvectors()(0, count - 1 - i);
        nodes.push_back(0.5 * (u_pos - u_neg));
        weights.push_back(0.5 * (w_pos + w_neg));
    }
}

// First-quadrant circle nodes: angles (j + 1/2) * (pi/2) / k, equal weights.
inline SphereRule circle_rule(std::size_t k) {
    SphereRule r;
    r.n = 2;
    r.orbits = k;
    const double w = 2.0 * M_PI / static_cast<double>(4 * k);
    for (std::size_t j = 0; j < k; ++j) {
        const double ang = (static_cast<double>(j) + 0.5) * (M_PI / 2.0) / static_cast<double>(k);
        r.coords.push_back(std::cos(ang));
        r.coords.push_back(std::sin(ang));
        r.weights.push_back(w);
    }
    return r;
}

inline std::size_t round_even(double x) {
    auto v = static_cast<std::size_t>(std::llround(x));
    return v + (v % 2);
}

} // namespace detail

// Builds a rule with roughly target_points signed nodes. Per-axis counts
// have floors so that coarse targets cannot silently degrade the rule.
inline SphereRule build_sphere_rule(int n, int target_points) {
    if (n < 1) throw DimensionMismatch("dimension must be >= 1");
    if (target_points < 1) throw Error("sphere_points must be >= 1");

    if (n == 1) {
        // S^0 = {-1, +1}: one orbit, unit weights.
        SphereRule r;
        r.n = 1;
        r.orbits = 1;
        r.coords = {1.0};
        r.weights = {1.0};
        return r;
    }
    if (n == 2) {
        const auto k = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(target_points / 4.0)));
        return detail::circle_rule(k);
    }

    // Budget: polar axes get m nodes each, the base circle 2m, so the total
    // is ~ m^{n-2} * 2m = 2 m^{n-1}. The per-axis floor rises with n because
    // each Gauss factor must resolve the anisotropy of g on its own: the
    // convergence rate per polar node is set by how close the complex zeros
    // of g come to the integration interval, independent of the other axes.
    const double m_raw = std::pow(static_cast<double>(target_points) / 2.0, 1.0 / static_cast<double>(n - 1));
    const std::size_t m_floor = n == 3 ? 32 : 44;
    const std::size_t m = std::max(m_floor, detail::round_even(m_raw));

    SphereRule sub = detail::circle_rule(std::max<std::size_t>(m_floor / 2, m / 2));
    for (int dim = 3; dim <= n; ++dim) {
        const double a = (static_cast<double>(dim) - 3.0) / 2.0;
        std::vector<double> u, wu;
        detail::gauss_jacobi_positive(static_cast<int>(m), a, u, wu);

        SphereRule next;
        next.n = dim;
        next.orbits = u.size() * sub.orbits;
        next.coords.reserve(next.orbits * static_cast<std::size_t>(dim));
        next.weights.reserve(next.orbits);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double radial = std::sqrt(1.0 - u[i] * u[i]);
            for (std::size_t b = 0; b < sub.orbits; ++b) {
                next.coords.push_back(u[i]);
                for (double c : sub.orbit_coords(b)) next.coords.push_back(radial * c);
                next.weights.push_back(wu[i] * sub.weights[b]);
            }
        }
        sub = std::move(next);
    }
    return sub;
}

// Applies fn(point, weight) to every signed node of the rule. `point` is a
// scratch span valid only during the call.
template <typename Fn>
void for_each_signed_node(const SphereRule& rule, Fn&& fn) {
    const int n = rule.n;
    std::vector<double> point(static_cast<std::size_t>(n));
    const std::size_t patterns = std::size_t{1} << n;
    for (std::size_t b = 0; b < rule.orbits; ++b) {
        const auto base = rule.orbit_coords(b);
        for (std::size_t s = 0; s < patterns; ++s) {
            for (int j = 0; j < n; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                point[ju] = (s >> j) & 1 ? -base[ju] : base[ju];
            }
            fn(std::span<const double>(point), rule.weights[b]);
        }
    }
}

} // namespace levelset
