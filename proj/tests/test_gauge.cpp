/**
 * @file test_gauge.cpp
 * @brief Magnetic fields, flux, the corrected Poincaré gauge and its decay.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "magres/error.hpp"
#include "magres/gauge.hpp"

using namespace magres;
using namespace magres::gauge;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("Gaussian flux matches the closed form") {
    const auto f = gaussian_field(1.3, 0.8);
    CHECK(std::abs(flux(f) - 1.3 * 0.8 * 0.8 / 2.0) <= 1e-8);
    const auto g = gaussian_field_with_flux(0.3, 0.6, 0.4, -0.2);
    CHECK(std::abs(flux(g) - 0.3) <= 1e-8);
}

TEST_CASE("corrected gauge alpha equals the mean of psi") {
    const auto f = gaussian_field_with_flux(0.7, 0.5, 0.3, 0.1);
    const CorrectedGauge g(f);
    double mean = 0.0;
    for (double p : g.psi_samples()) mean += p;
    mean /= static_cast<double>(g.psi_samples().size());
    CHECK(std::abs(g.alpha() - mean) <= 1e-12);
    CHECK(std::abs(g.alpha() - 0.7) <= 1e-8);
    CHECK(std::abs(g.phi(2.0 * kPi) - g.phi(0.0)) <= 1e-10);
}

TEST_CASE("the curl of the corrected gauge reproduces B") {
    const auto f = gaussian_field_with_flux(0.4, 0.7, 0.5, -0.3);
    const CorrectedGauge g(f);
    const Vec2 x{1.2, -0.7};
    const double c = curl_fd([&](const Vec2& y) { return g.A(y); }, x, 1e-4);
    CHECK(std::abs(c - f.B(x[0], x[1])) <= 1e-5);
}

TEST_CASE("A - A0 decays at least like |x|^-3 for a Gaussian field") {
    const auto rep = gauge_report(gaussian_field_with_flux(0.3, 0.8, 0.4, 0.2));
    CHECK((rep.decay_superpolynomial || rep.decay_exact || rep.decay_slope_A_minus_A0 <= -3.0));
    CHECK(rep.passed);
}

TEST_CASE("the reference field is exact in its own gauge") {
    const auto f = b0_field(0.3);
    const CorrectedGauge g(f);
    for (double r : {0.3, 0.9, 1.5, 4.0, 12.0}) {
        const Vec2 x{r * std::cos(0.4), r * std::sin(0.4)};
        const auto d = g.difference(x);
        CHECK(std::hypot(d[0], d[1]) <= 1e-12);
        const auto p = perturbation_coefficients(g, [](double, double) { return 0.0; }, x);
        CHECK(std::abs(p.first_order[0]) + std::abs(p.first_order[1]) + std::abs(p.divergence_term) +
                  std::abs(p.quadratic) <= 1e-12);
    }
}

TEST_CASE("fields with slow decay are rejected") {
    CHECK_THROWS_AS(check_decay(power_law_field(1.0, 3.0)), CheckFailure);
    CHECK_NOTHROW(check_decay(power_law_field(1.0, 4.5)));
}

TEST_CASE("circulation at large radius equals 2 pi times the flux") {
    const auto f = gaussian_field_with_flux(0.45, 0.6);
    const CorrectedGauge g(f);
    const double c = circulation([&](const Vec2& y) { return g.A(y); }, 10.0);
    CHECK(std::abs(c - 2.0 * kPi * 0.45) <= 1e-8);
}

TEST_CASE("unequal flux leaves a |x|^-1 difference") {
    const CorrectedGauge a(gaussian_field_with_flux(0.3, 0.6));
    const CorrectedGauge b(gaussian_field_with_flux(0.5, 0.6));
    for (double r : {20.0, 40.0}) {
        const Vec2 x{r, 0.0};
        const auto da = a.A(x), db = b.A(x);
        CHECK(r * std::hypot(da[0] - db[0], da[1] - db[1]) == doctest::Approx(0.2).epsilon(1e-6));
    }
    const CorrectedGauge c(gaussian_field_with_flux(0.3, 0.4, 0.5, 0.0));
    double prev = 1e300;
    for (double r : {5.0, 10.0, 20.0}) {
        const Vec2 x{0.0, r};
        const auto da = a.A(x), dc = c.A(x);
        const double d = std::hypot(da[0] - dc[0], da[1] - dc[1]);
        CHECK(d <= prev);
        prev = d;
    }
    CHECK(prev <= 1e-12);
}
