#pragma once

// Monte Carlo moment engine: rejection sampling uniform on the bounding box
// [-R, R]^n from the compactness certificate. Independent of the radial
// engine by construction; per-entry standard errors make the cross-engine
// agreement checks quantitative.

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "levelset/errors.hpp"
#include "levelset/homogeneous.hpp"
#include "levelset/moments.hpp"
#include "levelset/numeric.hpp"
#include "levelset/quadrature.hpp"

namespace levelset {

// lambda_alpha estimate = (box volume) * mean(x^alpha * 1{f(x) <= 1});
// stderr = (box volume) * sample standard deviation / sqrt(mc_samples).
template <PositivelyHomogeneous F>
MomentVector moments_mc(const F& f, const std::set<int>& orders, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    const CompactnessCertificate cert = min_on_sphere(f, cfg);
    detail::require_feasible(f, cert);

    const int n = f.dimension();
    const double radius = cert.radius;
    double volume = 1.0;
    for (int j = 0; j < n; ++j) volume *= 2.0 * radius;

    std::vector<MultiIndex> indices;
    int max_order = 0;
    for (int o : orders) {
        if (o < 0) throw Error("moment orders must be >= 0");
        for (auto& alpha : enumerate_degree(n, o)) indices.push_back(alpha);
        max_order = std::max(max_order, o);
    }

    std::vector<NeumaierSum> sum(indices.size()), sumsq(indices.size());
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> pows(static_cast<std::size_t>(n) * (static_cast<std::size_t>(max_order) + 1));
    const CounterRng rng(cfg.seed);
    const long long total = cfg.mc_samples;
    long long accepted = 0;

    for (long long i = 0; i < total; ++i) {
        for (int j = 0; j < n; ++j) {
            x[static_cast<std::size_t>(j)] = rng.uniform(
                static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(j),
                -radius, radius);
        }
        if (!(f(std::span<const double>(x)) <= 1.0)) continue;
        ++accepted;
        for (int j = 0; j < n; ++j) {
            double p = 1.0;
            for (int e = 0; e <= max_order; ++e) {
                pows[static_cast<std::size_t>(j) * (static_cast<std::size_t>(max_order) + 1) +
                     static_cast<std::size_t>(e)] = p;
                p *= x[static_cast<std::size_t>(j)];
            }
        }
        for (std::size_t a = 0; a < indices.size(); ++a) {
            const MultiIndex& alpha = indices[a];
            double mono = 1.0;
            for (int j = 0; j < n; ++j) {
                mono *= pows[static_cast<std::size_t>(j) * (static_cast<std::size_t>(max_order) + 1) +
                             static_cast<std::size_t>(alpha[static_cast<std::size_t>(j)])];
            }
            sum[a].add(mono);
            sumsq[a].add(mono * mono);
        }
    }

    if (accepted == 0 || static_cast<double>(accepted) < 1e-4 * static_cast<double>(total)) {
        throw DegenerateSampling("rejection sampling accepted " + std::to_string(accepted) + " of " +
                                 std::to_string(total) + " points; the level set is too thin for its "
                                 "bounding box");
    }

    MomentVector mv(n, Provenance::monte_carlo);
    const double nd = static_cast<double>(total);
    for (std::size_t a = 0; a < indices.size(); ++a) {
        const double mean = sum[a].value() / nd;
        std::optional<double> se;
        if (total > 1) {
            const double var = std::max(0.0, (sumsq[a].value() - nd * mean * mean) / (nd - 1.0));
            se = volume * std::sqrt(var / nd);
        }
        mv.set(indices[a], volume * mean, se);
    }
    return mv;
}

} // namespace levelset
