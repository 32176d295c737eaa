#include <catch_amalgamated.hpp>

#include "levelset/quadrature.hpp"
#include "oracles.hpp"

using namespace levelset;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const QuadratureConfig kCfg;

MultiIndex mi(std::vector<int> e) { return MultiIndex(std::move(e)); }
} // namespace

TEST_CASE("weighted disk integral matches its polar oracle") {
    // int_disk (x^2+y^2)^2 dx = 2 pi / 6 = pi / 3; identity factor 2/6
    const auto disk = make_polynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
    const auto r = lemma1_check(disk, 2, mi({0, 0}), kCfg);
    REQUIRE_THAT(r.lhs, WithinRel(oracles::kPi / 3.0, 1e-13));
    REQUIRE_THAT(r.rhs, WithinRel(oracles::kPi / 3.0, 1e-13));
    REQUIRE(r.relerr <= 1e-14);
}

TEST_CASE("k = 0 reduces both sides to the same value exactly") {
    const auto q = make_polynomial(2, 4, {{{4, 0}, 2.0}, {{2, 2}, -1.0}, {{0, 4}, 2.0}});
    for (const auto& alpha : {mi({0, 0}), mi({2, 0}), mi({1, 1}), mi({3, 1})}) {
        const auto r = lemma1_check(q, 0, alpha, kCfg);
        REQUIRE(r.relerr == 0.0);
        REQUIRE(r.lhs == r.rhs);
    }
}

TEST_CASE("odd indices vanish on both sides") {
    const auto quartic = make_polynomial(2, 4, {{{4, 0}, 1.0}, {{0, 4}, 1.0}});
    const auto r = lemma1_check(quartic, 1, mi({1, 1}), kCfg);
    REQUIRE(r.lhs == 0.0);
    REQUIRE(r.rhs == 0.0);
    REQUIRE(r.relerr == 0.0);
}

TEST_CASE("identity holds to 1e-8 for smooth positive quartics, k <= 3, |alpha| <= d") {
    const auto polys = {
        make_polynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}}),
        make_polynomial(2, 4, {{{4, 0}, 1.0}, {{0, 4}, 1.0}}),
        make_polynomial(2, 4, {{{4, 0}, 2.0}, {{2, 2}, -1.0}, {{0, 4}, 2.0}}),
    };
    for (const auto& p : polys) {
        for (int k = 0; k <= 3; ++k) {
            for (int o = 0; o <= p.degree(); ++o) {
                for (const auto& alpha : enumerate_degree(2, o)) {
                    REQUIRE(lemma1_check(p, k, alpha, kCfg).relerr <= 1e-8);
                }
            }
        }
    }
}

TEST_CASE("identity holds for the non-polynomial Euclidean norm, degree 1") {
    const EuclideanNorm f(2);
    for (int k = 0; k <= 3; ++k) {
        for (int o = 0; o <= 1; ++o) {
            for (const auto& alpha : enumerate_degree(2, o)) {
                REQUIRE(lemma1_check(f, k, alpha, kCfg).relerr <= 1e-8);
            }
        }
    }

    // ball oracle for the weighted side: int_B ||x||^2 dx = pi/2 in n = 2
    const auto r = lemma1_check(f, 2, mi({0, 0}), kCfg);
    REQUIRE_THAT(r.lhs, WithinRel(oracles::kPi / 2.0, 1e-12));

    // and the plain moment is the ball volume
    REQUIRE_THAT(moment_radial(f, mi({0, 0}), kCfg), WithinRel(oracles::kPi, 1e-12));
}

TEST_CASE("identity in three dimensions against the ball oracle") {
    const EuclideanNorm f(3);
    // int_{B^3} ||x|| dx = 4 pi int_0^1 r^3 dr = pi; factor (3+0)/(3+1) * 4pi/3 = pi
    const auto r = lemma1_check(f, 1, mi({0, 0, 0}), kCfg);
    REQUIRE_THAT(r.lhs, WithinRel(oracles::kPi, 1e-12));
    REQUIRE(r.relerr <= 1e-12);
}

TEST_CASE("relative error stays tiny for k <= 3 across a quadratic in n = 3") {
    const Eigen::MatrixXd Q = oracles::random_spd_matrix(3, 31);
    const auto p = oracles::quadratic_from_matrix(Q);
    for (int k = 0; k <= 3; ++k) {
        for (const auto& alpha : enumerate_degree(3, 2)) {
            REQUIRE(lemma1_check(p, k, alpha, kCfg).relerr <= 1e-10);
        }
    }
}

TEST_CASE("infeasible integrands are rejected") {
    const auto saddle = make_polynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, -1.0}});
    REQUIRE_THROWS_AS(lemma1_check(saddle, 1, mi({0, 0}), kCfg), NotCompact);
}
