/**
 * @file test_oracle.cpp
 * @brief ODE shooting Green's functions and extended-precision references.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "magres/oracle.hpp"
#include "magres/refop.hpp"

using namespace magres;

TEST_CASE("shooting reproduces the free Green's function at zero flux") {
    for (int m : {0, 1, 2}) {
        const auto o = oracle::ode_green_boundary(0.0, m, 0.3, 0.5, 2.0);
        const double k = std::sqrt(0.3), pi = 3.14159265358979323846;
        const std::complex<double> h1(std::cyl_bessel_j(m, k * 2.0), std::cyl_neumann(m, k * 2.0));
        const auto ref = std::complex<double>(0.0, pi / 2.0) * std::cyl_bessel_j(m, k * 0.5) * h1;
        CHECK(std::abs(o - ref) <= 1e-6 * std::abs(ref));
    }
}

TEST_CASE("shooting agrees with the closed-form kernel") {
    const auto o = oracle::ode_green_boundary(0.3, 0, 0.05, 0.7, 1.8);
    const auto c = refop::channel_kernel(0.3, 0, 0.05, refop::Side::Plus, 0.7, 1.8);
    CHECK(std::abs(o - c) <= 1e-6 * std::abs(c));
    const auto on = oracle::ode_green(2.3, -2, std::complex<double>(-0.04, 0.0), 0.5, 1.0);
    const auto cn = refop::channel_kernel(2.3, -2, -0.04, refop::Side::Plus, 0.5, 1.0);
    CHECK(std::abs(on - cn) <= 1e-6 * std::abs(cn));
}

TEST_CASE("outer radius rule") {
    CHECK(oracle::outer_radius(std::complex<double>(1.0, 0.0)) == doctest::Approx(50.0));
    CHECK(oracle::outer_radius(std::complex<double>(0.01, 0.0)) == doctest::Approx(400.0));
}

TEST_CASE("extended-precision references") {
    const auto m = oracle::kummer_m_reference(1.0, 2.0, 0.7);
    CHECK(m.value == doctest::Approx(std::expm1(0.7) / 0.7).epsilon(1e-15));
    CHECK(m.digits.size() > 30);
    for (double nu : {0.0, 0.3, 2.5})
        CHECK(oracle::bessel_j_reference(nu, 3.7).value == doctest::Approx(std::cyl_bessel_j(nu, 3.7)).epsilon(1e-13));
    for (double x : {0.5, 3.3, 11.0})
        CHECK(oracle::gamma_integral_reference(x).value == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
}

TEST_CASE("interior regular solution reference matches the library") {
    const auto sp = refop::spectral_point(0.3, -1.0);
    const auto iv = refop::interior_solutions(0.3, 1, sp, 0.6);
    const auto ref = oracle::interior_v_reference(0.3, 1, sp.kappa.real(), 0.6);
    CHECK(iv.v.real() == doctest::Approx(ref.value).epsilon(1e-12));
}
