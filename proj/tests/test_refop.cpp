/**
 * @file test_refop.cpp
 * @brief Channel kernels, flux parameters and threshold coefficients.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "magres/error.hpp"
#include "magres/refop.hpp"

using namespace magres;
using namespace magres::refop;

TEST_CASE("flux parameters") {
    const auto a = flux_params(2.3);
    CHECK(a.mu == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(a.k_star == -2);
    CHECK_FALSE(a.integer_flux);
    const auto b = flux_params(-0.3);
    CHECK(b.k_star == 0);
    CHECK(b.mu == doctest::Approx(0.3));
    const auto c = flux_params(1.0);
    CHECK(c.integer_flux);
    CHECK(c.k_star == -1);
    CHECK(c.mu == 0.0);
    const auto d = flux_params(0.5);
    CHECK(d.tie());
    CHECK(d.mu == 0.5);
    CHECK(d.k_star == 0);
    CHECK(*d.k_star_alt == -1);
    const auto e = flux_params(1.7);
    CHECK(e.k_star == -2);
    CHECK(e.mu == doctest::Approx(0.3));
    CHECK_THROWS_AS(flux_params(51.0), DomainError);
}

TEST_CASE("kernels are symmetric and real below the spectrum") {
    const auto v = channel_kernel(0.3, 1, -0.1, Side::Plus, 2.0, 3.0);
    CHECK(std::abs(v.imag()) <= 1e-10);
    for (double lam : {-0.5, 0.05, 2.0})
        for (int m : {-2, 0, 3}) {
            const auto a = channel_kernel(2.3, m, lam, Side::Plus, 0.6, 1.9);
            const auto b = channel_kernel(2.3, m, lam, Side::Plus, 1.9, 0.6);
            CHECK(std::abs(a - b) <= 1e-13 * std::abs(a));
        }
}

TEST_CASE("the minus boundary value is the complex conjugate") {
    for (double r : {0.4, 1.0, 2.5}) {
        const auto p = channel_kernel(0.3, 0, 0.7, Side::Plus, r, 1.3);
        const auto m = channel_kernel(0.3, 0, 0.7, Side::Minus, r, 1.3);
        CHECK(std::abs(p - std::conj(m)) <= 1e-13 * std::abs(p));
    }
}

TEST_CASE("the kernel solves the radial equation away from the diagonal") {
    const double alpha = 0.3, lam = 0.4, rp = 0.5;
    const int m = 1;
    for (double r : {0.8, 1.6, 3.0}) {
        const double h = 1e-3;
        auto K = [&](double x) { return channel_kernel(alpha, m, lam, Side::Plus, x, rp); };
        const auto f = K(r), fp = (K(r + h) - K(r - h)) / (2.0 * h), fpp = (K(r + h) - 2.0 * f + K(r - h)) / (h * h);
        const double a0 = r < 1.0 ? alpha : alpha / r;
        const double q = m / r + a0;
        const auto res = -fpp - fp / r + (q * q - lam) * f;
        CHECK(std::abs(res) <= 1e-5 * std::abs(f));
    }
}

TEST_CASE("non-integer threshold coefficient") {
    const auto fp = flux_params(0.3);
    for (auto pr : {std::pair{0.5, 0.8}, std::pair{0.6, 2.0}, std::pair{2.0, 4.0}}) {
        const double r = pr.first, rp = pr.second;
        const double g0 = threshold_g0(0.3, fp.k_star, r, rp);
        const auto g1 = threshold_g1(fp, r, rp);
        const double lam = 1e-10;
        const auto est = (channel_kernel(0.3, fp.k_star, lam, Side::Plus, r, rp) - g0) / lambda_power(lam, fp.mu);
        CHECK(std::abs(est - g1) <= 2e-2 * std::abs(g1));
        const auto estn = (channel_kernel(0.3, fp.k_star, -lam, Side::Plus, r, rp) - g0) / lambda_power(-lam, fp.mu);
        CHECK(std::abs(estn - g1) <= 2e-2 * std::abs(g1));
    }
    CHECK_THROWS_AS(g1_prefactor(0.5), UnsupportedRegime);
    CHECK_THROWS_AS(threshold_g1(flux_params(1.0), 0.5, 0.5), UnsupportedRegime);
}

TEST_CASE("the prefactor matches its exponential form") {
    for (double mu : {0.1, 0.3, 0.45}) {
        const double pi = 3.14159265358979323846;
        const std::complex<double> alt = -pi * std::exp(std::complex<double>(0.0, -pi * mu)) /
                                         (std::sin(pi * mu) * std::pow(4.0, mu) * std::tgamma(mu) * std::tgamma(mu));
        CHECK(std::abs(g1_prefactor(mu) - alt) <= 1e-13 * std::abs(alt));
    }
}

TEST_CASE("integer-flux threshold: (R - G0) log(lambda) tends to k1") {
    for (int a : {1, 2}) {
        const auto it = threshold_integer(a, 0.5, 2.0);
        const double lam = 1e-16;
        const auto R = channel_kernel(a, -a, lam, Side::Plus, 0.5, 2.0);
        const auto est = (R - it.g0) * lambda_log(lam);
        CHECK(std::abs(est - it.k1) <= 0.15 * std::abs(it.k1));
    }
}

TEST_CASE("off-threshold channels converge to G0 faster than lambda^mu") {
    const auto fp = flux_params(0.3);
    const int m = fp.k_star + 1;
    const double d4 = std::abs(channel_kernel(0.3, m, 1e-4, Side::Plus, 0.5, 2.0) - threshold_g0(0.3, m, 0.5, 2.0));
    const double d6 = std::abs(channel_kernel(0.3, m, 1e-6, Side::Plus, 0.5, 2.0) - threshold_g0(0.3, m, 0.5, 2.0));
    CHECK(d4 / d6 > std::pow(100.0, 0.5));
}

TEST_CASE("channel decay of the zero-energy kernel") {
    const double g3 = std::abs(threshold_g0(0.3, 3, 0.5, 2.0));
    const double g6 = std::abs(threshold_g0(0.3, 6, 0.5, 2.0));
    const double env3 = std::pow(0.5, 3) * std::pow(2.0, -3.3) / 3.3;
    const double env6 = std::pow(0.5, 6) * std::pow(2.0, -6.3) / 6.3;
    CHECK(g3 / env3 == doctest::Approx(g6 / env6).epsilon(0.25));
}

TEST_CASE("full kernel reports a finite tail bound") {
    const double x[2] = {0.5, 0.2}, y[2] = {-1.0, 1.5};
    const auto v = full_kernel(0.3, 0.5, Side::Plus, x, y);
    CHECK(std::isfinite(v.value.real()));
    CHECK(v.tail_bound < 1e-6);
}
