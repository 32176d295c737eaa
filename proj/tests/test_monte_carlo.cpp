#include <catch_amalgamated.hpp>

#include "levelset/monte_carlo.hpp"
#include "oracles.hpp"

using namespace levelset;
using Catch::Matchers::WithinAbs;

namespace {
MultiIndex mi(std::vector<int> e) { return MultiIndex(std::move(e)); }
} // namespace

TEST_CASE("disk estimates land within four standard errors of the oracle") {
    const auto disk = make_polynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
    const QuadratureConfig cfg; // 1e6 samples, seed 42
    const auto mv = moments_mc(disk, {0, 1, 2}, cfg);

    for (const auto& [alpha, entry] : mv.entries()) {
        const double truth = oracles::disk_moment(alpha[0], alpha[1]);
        REQUIRE(entry.stderr_value.has_value());
        REQUIRE(*entry.stderr_value > 0.0);
        REQUIRE(std::abs(entry.value - truth) <= 4.0 * *entry.stderr_value);
    }
}

TEST_CASE("single-sample estimator equals box volume times the monomial") {
    const auto disk = make_polynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
    QuadratureConfig cfg;
    cfg.mc_samples = 1;
    cfg.seed = 42;

    // reproduce the sample the engine draws (radius 1, box [-1,1]^2)
    const CounterRng rng(cfg.seed);
    const double x = rng.uniform(0, -1.0, 1.0);
    const double y = rng.uniform(1, -1.0, 1.0);
    REQUIRE(x * x + y * y <= 1.0); // seed 42 accepts its first draw

    const auto mv = moments_mc(disk, {0, 2}, cfg);
    REQUIRE(mv.value(mi({0, 0})) == 4.0);
    REQUIRE(mv.value(mi({2, 0})) == 4.0 * x * x);
    REQUIRE(mv.value(mi({1, 1})) == 4.0 * x * y);
    REQUIRE_FALSE(mv.stderr_value(mi({0, 0})).has_value()); // no spread from one sample
}

TEST_CASE("identical seeds reproduce identical moment vectors") {
    const auto g = make_polynomial(2, 2, {{{2, 0}, 2.0}, {{1, 1}, 0.5}, {{0, 2}, 1.0}});
    QuadratureConfig cfg;
    cfg.mc_samples = 20000;
    const auto a = moments_mc(g, {0, 2}, cfg);
    const auto b = moments_mc(g, {0, 2}, cfg);
    for (const auto& [alpha, entry] : a.entries()) {
        REQUIRE(entry.value == b.value(alpha));
    }
    cfg.seed = 43;
    const auto c = moments_mc(g, {0, 2}, cfg);
    REQUIRE(a.value(mi({0, 0})) != c.value(mi({0, 0})));
}

TEST_CASE("thin level sets exhaust the sampler") {
    const auto thin = make_polynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1e10}});
    QuadratureConfig cfg;
    cfg.mc_samples = 100000;
    REQUIRE_THROWS_AS(moments_mc(thin, {0}, cfg), DegenerateSampling);
}

TEST_CASE("noncompact inputs are rejected before sampling") {
    const auto saddle = make_polynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, -1.0}});
    REQUIRE_THROWS_AS(moments_mc(saddle, {0}, QuadratureConfig{}), NotCompact);
}

TEST_CASE("cross-engine agreement on disk and quartic, orders d and 2d") {
    const auto cases = {make_polynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}}),
                        make_polynomial(2, 4, {{{4, 0}, 1.0}, {{0, 4}, 1.0}})};
    for (const auto& p : cases) {
        const QuadratureConfig cfg;
        const std::set<int> orders{p.degree(), 2 * p.degree()};
        const auto mc = moments_mc(p, orders, cfg);
        const auto radial = moments_radial(p, orders, cfg);
        for (const auto& [alpha, entry] : mc.entries()) {
            REQUIRE(std::abs(entry.value - radial.value(alpha)) <= 4.0 * *entry.stderr_value);
        }
    }
}

TEST_CASE("monte carlo provenance tag") {
    const auto disk = make_polynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
    QuadratureConfig cfg;
    cfg.mc_samples = 1000;
    REQUIRE(moments_mc(disk, {0}, cfg).provenance() == Provenance::monte_carlo);
}
