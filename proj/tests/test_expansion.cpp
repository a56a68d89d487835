/**
 * @file test_expansion.cpp
 * @brief Weighted norms, threshold remainders, the perturbed expansion and
 *        the Hardy quotient.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "magres/expansion.hpp"
#include "magres/gauge.hpp"

using namespace magres;
using namespace magres::expansion;

TEST_CASE("the radial grid integrates weighted powers") {
    const auto g = radial_grid();
    CHECK(g.size() == 200);
    for (double nu : {0.0, 0.3, 2.0})
        for (double s : {2.6, 4.0}) CHECK(grid_exactness(g, nu, s) <= 1e-6);
}

TEST_CASE("the hybrid Schur estimate dominates the operator norm") {
    const auto g = radial_grid(120);
    const auto K = remainder_matrix(0.3, 0, 1e-4, Side::Plus, RemainderMode::ZeroOrder, g);
    const double lb = operator_norm_lower_bound(K, g, 2.6);
    const double schur = weighted_norm(K, g, 2.6, NormMethod::SchurHolmgrenHybrid);
    const double hs = weighted_norm(K, g, 2.6, NormMethod::HilbertSchmidt);
    CHECK(lb > 0.0);
    CHECK(schur >= lb / std::sqrt(2.0));
    CHECK(hs >= lb * (1.0 - 1e-12));
}

TEST_CASE("zero-order remainder scales like lambda^mu") {
    const auto g = radial_grid(120);
    const double n1 = remainder_norm(0.3, 1e-6, Side::Plus, 2.6, RemainderMode::ZeroOrder, g, 2);
    const double n2 = remainder_norm(0.3, 1e-8, Side::Plus, 2.6, RemainderMode::ZeroOrder, g, 2);
    CHECK(std::log(n1 / n2) / std::log(100.0) == doctest::Approx(0.3).epsilon(0.1));
    const double f1 = remainder_norm(0.3, 1e-6, Side::Plus, 2.6, RemainderMode::Full, g, 2);
    CHECK(f1 < 0.1 * n1);
}

TEST_CASE("a vanishing perturbation leaves the reference expansion unchanged") {
    const auto g = radial_grid(80);
    const auto res = nystrom_perturbed(0.3, gauge::b0_field(0.3), [](double) { return 0.0; }, 2.6, {0}, 1e-6, g);
    REQUIRE(res.channels.size() == 1);
    const auto& c = res.channels[0];
    double d0 = 0.0, d1 = 0.0, n0 = 0.0, n1 = 0.0;
    for (std::size_t i = 0; i < c.G0.size(); ++i) {
        d0 = std::max(d0, std::abs(c.F0[i] - c.G0[i]));
        d1 = std::max(d1, std::abs(c.F1[i] - c.G1[i]));
        n0 = std::max(n0, std::abs(c.G0[i]));
        n1 = std::max(n1, std::abs(c.G1[i]));
    }
    CHECK(d0 <= 1e-12 * n0);
    CHECK(d1 <= 1e-12 * n1);
    CHECK(c.f1_minus_g1 <= 1e-12);
}

TEST_CASE("F1 - G1 is first order in the perturbation") {
    const auto g = radial_grid(80);
    auto run = [&](double a) {
        const auto r =
            nystrom_perturbed(0.3, gauge::b0_field(0.3), [a](double x) { return a * std::pow(1.0 + x, -4.0); }, 2.6,
                              {0}, 1e-6, g);
        return r.channels[0].f1_minus_g1;
    };
    const double ratio = run(0.02) / run(0.01);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("Hardy quotient") {
    const gauge::CorrectedGauge zero(gauge::zero_field());
    const auto sw0 = hardy_sweep(zero, {1.0, 4.0, 16.0, 64.0});
    CHECK(sw0.slope <= -0.5);
    const gauge::CorrectedGauge b(gauge::gaussian_field_with_flux(0.3, 0.7));
    const auto sw = hardy_sweep(b, {0.5, 1.0, 2.0, 4.0, 8.0});
    CHECK(sw.minimum > 0.0);
}
