#pragma once

// Compactness certification and the radial moment engine.
//
// For positively homogeneous nonnegative f of degree d, integrating the
// radial coordinate out of lambda_alpha = int_{f<=1} x^alpha dx gives the
// spherical form
//
//   lambda_alpha = (n+|alpha|)^{-1} int_{S^{n-1}} theta^alpha
//                    f(theta)^{-(n+|alpha|)/d} dsigma(theta),
//
// since along each ray f(r theta) = r^d f(theta) <= 1 exactly for
// r <= f(theta)^{-1/d}. The weighted variants with an extra f(x)^k factor
// close the same way, which is what the identity check exercises.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "levelset/errors.hpp"
#include "levelset/homogeneous.hpp"
#include "levelset/moments.hpp"
#include "levelset/multi_index.hpp"
#include "levelset/numeric.hpp"
#include "levelset/sphere.hpp"

namespace levelset {

struct QuadratureConfig {
    int sphere_points = 4096;
    long long mc_samples = 1'000'000;
    std::uint64_t seed = 42;
    double rtol = 1e-9;
    double atol = 1e-12;

    void validate() const {
        if (sphere_points < 1) throw Error("sphere_points must be >= 1");
        if (mc_samples < 1) throw Error("mc_samples must be >= 1");
        if (rtol <= 0.0 || atol <= 0.0) throw Error("tolerances must be > 0");
    }
};

// Minimum m of f over the unit sphere plus the implied Euclidean bounding
// radius of G = {f <= 1}: f(x) = ||x||^d f(x/||x||) >= ||x||^d m, so
// membership forces ||x|| <= m^{-1/d}.
struct CompactnessCertificate {
    double min_value = 0.0;
    double radius = std::numeric_limits<double>::quiet_NaN();
    bool feasible = false;

    // Feasible but close enough to zero that the bounding radius blows up
    // and downstream conditioning degrades; callers attach warnings.
    bool near_degenerate() const { return feasible && min_value < 1e-6; }

    static constexpr double feasibility_tol = 1e-9;
};

namespace detail {

template <PositivelyHomogeneous F>
void numeric_gradient(const F& f, std::span<const double> x, std::span<double> out) {
    std::vector<double> p(x.begin(), x.end());
    const double h = 1e-7;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double saved = p[j];
        p[j] = saved + h;
        const double fp = f(std::span<const double>(p));
        p[j] = saved - h;
        const double fm = f(std::span<const double>(p));
        p[j] = saved;
        out[j] = (fp - fm) / (2.0 * h);
    }
}

template <PositivelyHomogeneous F>
void eval_gradient(const F& f, std::span<const double> x, std::span<double> out) {
    if constexpr (HasAnalyticGradient<F>) {
        f.gradient(x, out);
    } else {
        numeric_gradient(f, x, out);
    }
}

inline void normalize(std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    s = std::sqrt(s);
    for (double& v : x) v /= s;
}

// Projected gradient descent on the sphere with Armijo backtracking.
// Returns the refined function value; x is updated in place.
template <PositivelyHomogeneous F>
double descend_on_sphere(const F& f, std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> grad(n), pg(n), trial(n);
    double fx = f(std::span<const double>(x));
    double step = 1.0;
    for (int iter = 0; iter < 400; ++iter) {
        eval_gradient(f, std::span<const double>(x), std::span<double>(grad));
        double dot = 0.0;
        for (std::size_t j = 0; j < n; ++j) dot += grad[j] * x[j];
        double pg_norm2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            pg[j] = grad[j] - dot * x[j];
            pg_norm2 += pg[j] * pg[j];
        }
        const double pg_norm = std::sqrt(pg_norm2);
        if (pg_norm <= 1e-13 * std::max(1.0, std::abs(fx))) break;

        double t = std::min(step * 2.0, 0.5 / pg_norm); // cap the move at ~0.5 radians
        bool moved = false;
        while (t > 1e-18 / pg_norm) {
            for (std::size_t j = 0; j < n; ++j) trial[j] = x[j] - t * pg[j];
            normalize(trial);
            const double ft = f(std::span<const double>(trial));
            if (ft <= fx - 1e-4 * t * pg_norm2) {
                x = trial;
                fx = ft;
                step = t;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) break;
    }
    return fx;
}

} // namespace detail

// Dense multistart sampling over a sphere rule followed by local descent.
template <PositivelyHomogeneous F>
CompactnessCertificate min_on_sphere(const F& f, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    const int n = f.dimension();
    const SphereRule rule = build_sphere_rule(n, std::max(cfg.sphere_points, 512));

    // Best few sampled nodes seed the local refinements.
    constexpr std::size_t starts = 8;
    std::vector<std::pair<double, std::vector<double>>> best;
    for_each_signed_node(rule, [&](std::span<const double> p, double) {
        const double v = f(p);
        if (best.size() < starts) {
            best.emplace_back(v, std::vector<double>(p.begin(), p.end()));
            std::sort(best.begin(), best.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        } else if (v < best.back().first) {
            best.back() = {v, std::vector<double>(p.begin(), p.end())};
            std::sort(best.begin(), best.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
    });

    double m = std::numeric_limits<double>::infinity();
    for (auto& [v0, x] : best) {
        m = std::min(m, detail::descend_on_sphere(f, x));
    }

    CompactnessCertificate cert;
    cert.min_value = m;
    cert.feasible = std::isfinite(m) && m > CompactnessCertificate::feasibility_tol;
    if (cert.feasible) cert.radius = std::pow(m, -1.0 / static_cast<double>(f.degree()));
    return cert;
}

namespace detail {

// T = sum over sign patterns s of prod_j s_j^{alpha_j} * vals[s], reduced
// coordinate by coordinate so that symmetric pairs cancel exactly.
inline double signed_orbit_sum(std::span<double> vals, const MultiIndex& alpha) {
    const int n = alpha.dimension();
    for (int j = 0; j < n; ++j) {
        const std::size_t half = std::size_t{1} << j;
        const bool odd = alpha[static_cast<std::size_t>(j)] % 2 != 0;
        for (std::size_t base = 0; base < vals.size(); base += half << 1) {
            for (std::size_t t = 0; t < half; ++t) {
                const double lo = vals[base + t];
                const double hi = vals[base + t + half];
                vals[base + t] = odd ? lo - hi : lo + hi;
            }
        }
    }
    return vals[0];
}

template <PositivelyHomogeneous F>
[[noreturn]] void throw_nonpositive(const F& f, std::span<const double> theta) {
    std::string msg = "f is nonpositive on the unit sphere at (";
    for (std::size_t j = 0; j < theta.size(); ++j) {
        msg += (j ? "," : "") + std::to_string(theta[j]);
    }
    msg += "): level set {f <= 1} contains a half-line and is not compact";
    throw NotCompact(msg);
}

// Shared kernel: (n + k d + |alpha|)^{-1} *
//   sum_nodes w * theta^alpha * f(theta)^{k - (n + k d + |alpha|)/d}.
// k = 0 is the plain moment; the identity check reuses the same code path
// so that its k = 0 case is bit-identical to the unweighted moment.
template <PositivelyHomogeneous F>
double weighted_spherical_moment(const F& f, const SphereRule& rule, const MultiIndex& alpha,
                                 int k) {
    const int n = f.dimension();
    const double d = static_cast<double>(f.degree());
    const int a = alpha.degree();
    const double divisor = static_cast<double>(n + a) + static_cast<double>(k) * d;
    const double expo = static_cast<double>(k) - divisor / d;

    const std::size_t patterns = std::size_t{1} << n;
    std::vector<double> point(static_cast<std::size_t>(n));
    std::vector<double> powv(patterns);
    NeumaierSum acc;
    for (std::size_t b = 0; b < rule.orbits; ++b) {
        const auto base = rule.orbit_coords(b);
        for (std::size_t s = 0; s < patterns; ++s) {
            for (int j = 0; j < n; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                point[ju] = (s >> j) & 1 ? -base[ju] : base[ju];
            }
            const double g = f(std::span<const double>(point));
            if (!(g > 0.0)) throw_nonpositive(f, std::span<const double>(point));
            powv[s] = std::pow(g, expo);
        }
        double mono = 1.0;
        for (int j = 0; j < n; ++j) {
            mono *= pow_int(base[static_cast<std::size_t>(j)], alpha[static_cast<std::size_t>(j)]);
        }
        acc.add(rule.weights[b] * mono * signed_orbit_sum(std::span<double>(powv), alpha));
    }
    return acc.value() / divisor;
}

template <PositivelyHomogeneous F>
void require_feasible(const F& f, const CompactnessCertificate& cert) {
    if (!cert.feasible) {
        throw NotCompact("level set {f <= 1} is not compact: min of f on the unit sphere is " +
                         std::to_string(cert.min_value));
    }
    (void)f;
}

} // namespace detail

// lambda_alpha for a single index, by the spherical-radial formula.
template <PositivelyHomogeneous F>
double moment_radial(const F& f, const MultiIndex& alpha, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    if (alpha.dimension() != f.dimension()) {
        throw DimensionMismatch("moment index dimension does not match integrand");
    }
    detail::require_feasible(f, min_on_sphere(f, cfg));
    const SphereRule rule = build_sphere_rule(f.dimension(), cfg.sphere_points);
    return detail::weighted_spherical_moment(f, rule, alpha, 0);
}

// lambda_alpha for every alpha with |alpha| in `orders`, in one pass over
// the sphere nodes: the f(theta)^{-(n+o)/d} powers are shared across all
// indices of order o.
template <PositivelyHomogeneous F>
MomentVector moments_radial(const F& f, const std::set<int>& orders,
                            const QuadratureConfig& cfg = {}) {
    cfg.validate();
    detail::require_feasible(f, min_on_sphere(f, cfg));
    const int n = f.dimension();
    const double d = static_cast<double>(f.degree());
    const SphereRule rule = build_sphere_rule(n, cfg.sphere_points);

    struct OrderBlock {
        int order;
        double expo;
        std::vector<MultiIndex> indices;
        std::vector<NeumaierSum> acc;
    };
    std::vector<OrderBlock> blocks;
    int max_order = 0;
    for (int o : orders) {
        if (o < 0) throw Error("moment orders must be >= 0");
        OrderBlock blk;
        blk.order = o;
        blk.expo = -static_cast<double>(n + o) / d;
        blk.indices = enumerate_degree(n, o);
        blk.acc.resize(blk.indices.size());
        max_order = std::max(max_order, o);
        blocks.push_back(std::move(blk));
    }

    const std::size_t patterns = std::size_t{1} << n;
    std::vector<double> point(static_cast<std::size_t>(n));
    std::vector<double> gpow(patterns), scratch(patterns);
    // powers of the orbit's absolute coordinates up to max_order
    std::vector<double> pows(static_cast<std::size_t>(n) * (static_cast<std::size_t>(max_order) + 1));
    auto pw = [&](int j, int e) {
        return pows[static_cast<std::size_t>(j) * (static_cast<std::size_t>(max_order) + 1) +
                    static_cast<std::size_t>(e)];
    };

    std::vector<double> gvals(patterns);
    for (std::size_t b = 0; b < rule.orbits; ++b) {
        const auto base = rule.orbit_coords(b);
        for (std::size_t s = 0; s < patterns; ++s) {
            for (int j = 0; j < n; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                point[ju] = (s >> j) & 1 ? -base[ju] : base[ju];
            }
            const double g = f(std::span<const double>(point));
            if (!(g > 0.0)) detail::throw_nonpositive(f, std::span<const double>(point));
            gvals[s] = g;
        }
        for (int j = 0; j < n; ++j) {
            double p = 1.0;
            for (int e = 0; e <= max_order; ++e) {
                pows[static_cast<std::size_t>(j) * (static_cast<std::size_t>(max_order) + 1) +
                     static_cast<std::size_t>(e)] = p;
                p *= base[static_cast<std::size_t>(j)];
            }
        }
        const double w = rule.weights[b];
        for (auto& blk : blocks) {
            for (std::size_t s = 0; s < patterns; ++s) gpow[s] = std::pow(gvals[s], blk.expo);
            for (std::size_t i = 0; i < blk.indices.size(); ++i) {
                const MultiIndex& alpha = blk.indices[i];
                double mono = 1.0;
                for (int j = 0; j < n; ++j) mono *= pw(j, alpha[static_cast<std::size_t>(j)]);
                std::copy(gpow.begin(), gpow.end(), scratch.begin());
                blk.acc[i].add(w * mono * detail::signed_orbit_sum(std::span<double>(scratch), alpha));
            }
        }
    }

    MomentVector mv(n, Provenance::radial_quadrature);
    for (auto& blk : blocks) {
        for (std::size_t i = 0; i < blk.indices.size(); ++i) {
            mv.set(blk.indices[i], blk.acc[i].value() / static_cast<double>(n + blk.order));
        }
    }
    return mv;
}

struct Lemma1Result {
    double lhs = 0.0;    // int_{f<=1} x^alpha f(x)^k dx
    double rhs = 0.0;    // (n+|alpha|)/(n+kd+|alpha|) * int_{f<=1} x^alpha dx
    double relerr = 0.0; // |lhs-rhs| / max(|rhs|, atol)
};

// Checks the homogeneity identity
//   int_G x^alpha f^k dx = (n+|alpha|)/(n+kd+|alpha|) int_G x^alpha dx
// with both sides evaluated by the radial engine.
template <PositivelyHomogeneous F>
Lemma1Result lemma1_check(const F& f, int k, const MultiIndex& alpha,
                          const QuadratureConfig& cfg = {}) {
    cfg.validate();
    if (k < 0) throw Error("lemma1_check requires k >= 0");
    if (alpha.dimension() != f.dimension()) {
        throw DimensionMismatch("index dimension does not match integrand");
    }
    detail::require_feasible(f, min_on_sphere(f, cfg));
    const SphereRule rule = build_sphere_rule(f.dimension(), cfg.sphere_points);

    const int n = f.dimension();
    const double d = static_cast<double>(f.degree());
    const int a = alpha.degree();
    const double factor = (static_cast<double>(n + a)) /
                          (static_cast<double>(n + a) + static_cast<double>(k) * d);

    Lemma1Result r;
    r.lhs = detail::weighted_spherical_moment(f, rule, alpha, k);
    r.rhs = factor * detail::weighted_spherical_moment(f, rule, alpha, 0);
    r.relerr = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.rhs), cfg.atol);
    return r;
}

} // namespace levelset
