/**
 * @file test_specfun.cpp
 * @brief Special functions against the standard library, Boost.Math and
 *        closed forms.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "magres/error.hpp"
#include "magres/specfun.hpp"

using namespace magres;
using namespace magres::specfun;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
constexpr double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("gamma family against the standard library") {
    for (double x : {0.1, 0.5, 1.0, 1.3, 2.5, 7.3, 17.0, 33.7, 59.5}) {
        CHECK(rel(specfun::gamma(x), std::tgamma(x)) < 1e-13);
        CHECK(std::abs(log_gamma(x) - std::lgamma(x)) < 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
        CHECK(rel(rgamma(x), 1.0 / std::tgamma(x)) < 1e-13);
    }
    CHECK(rgamma(0.0) == 0.0);
    CHECK(rgamma(-3.0) == 0.0);
    CHECK(rel(rgamma(-2.5), 1.0 / std::tgamma(-2.5)) < 1e-12);
    CHECK_THROWS_AS(specfun::gamma(0.0), DomainError);
    CHECK_THROWS_AS(specfun::gamma(61.0), DomainError);
}

TEST_CASE("J, Y, I, K of real order against the standard library") {
    double worst = 0.0;
    for (double nu : {0.0, 0.3, 0.5, 1.0, 2.7, 5.0, 10.5, 20.25})
        for (double z : {0.05, 0.4, 1.0, 2.2, 7.9, 19.0, 48.0}) {
            const auto a = bessel_jy(nu, z);
            const auto b = bessel_ik(nu, z);
            worst = std::max({worst, rel(a.j, std::cyl_bessel_j(nu, z)), rel(a.y, std::cyl_neumann(nu, z)),
                              rel(b.i, std::cyl_bessel_i(nu, z)), rel(b.k, std::cyl_bessel_k(nu, z))});
            // Derivatives from the recurrences.
            const double jp = nu * std::cyl_bessel_j(nu, z) / z - std::cyl_bessel_j(nu + 1.0, z);
            CHECK(std::abs(a.jp - jp) <= 1e-10 * std::max(1.0, std::abs(jp)));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("Wronskians J/Y and I/K") {
    for (double nu : {0.0, 0.7, 3.0, 10.5})
        for (double z : {0.1, 1.0, 10.0, 50.0}) {
            const auto a = bessel_jy(nu, z);
            CHECK(std::abs((a.j * a.yp - a.jp * a.y) * kPi * z / 2.0 - 1.0) < 1e-10);
            const auto b = bessel_ik(nu, z);
            CHECK(std::abs((b.i * b.kp - b.ip * b.k) * z + 1.0) < 1e-10);
        }
}

TEST_CASE("negative non-integer order J by series and by reflection") {
    for (double nu : {0.3, 1.7})
        for (double z : {0.5, 2.0, 15.0}) {
            const double refl = std::cos(nu * kPi) * std::cyl_bessel_j(nu, z) - std::sin(nu * kPi) * std::cyl_neumann(nu, z);
            const auto v = bessel(BesselKind::J, -nu, z);
            CHECK(std::abs(v.real() - refl) < 1e-10 * std::max(1.0, std::abs(refl)));
            CHECK(v.abs_err >= 0.0);
        }
}

TEST_CASE("Kummer M against Boost.Math and closed forms") {
    for (double z : {0.1, 0.7, 3.0, 12.0}) CHECK(rel(kummer_m(1.0, 2.0, z).real(), std::expm1(z) / z) < 1e-13);
    for (double a : {0.3, 1.5, 4.2})
        for (double b : {1.0, 3.0, 5.0})
            for (double z : {0.2, 2.0, 9.0})
                CHECK(rel(kummer_m(a, b, z).real(), boost::math::hypergeometric_1F1(a, b, z)) < 1e-11);
    CHECK(kummer_m(std::complex<double>(0.4, 0.3), 2.0, 0.0).real() == doctest::Approx(1.0));
}

TEST_CASE("Kummer U closed form U(a, a+1, z) = z^-a and Wronskian with M") {
    for (double a : {0.2, 0.7, 2.5})
        for (double z : {0.3, 2.5, 20.0}) CHECK(rel(kummer_u(a, a + 1.0, z).real(), std::pow(z, -a)) < 1e-9);
    for (double a : {0.3, 1.2})
        for (double b : {1.0, 3.0})
            for (double z : {0.5, 4.0}) {
                const double M = kummer_m(a, b, z).real(), U = kummer_u(a, b, z).real();
                const auto d = kummer_derivatives(a, b, z);
                const double w = M * d.du.real() - d.dm.real() * U;
                const double ref = -std::tgamma(b) * std::pow(z, -b) * std::exp(z) / std::tgamma(a);
                CHECK(rel(w, ref) < 1e-9);
            }
}

TEST_CASE("Y integral representation agrees with the continued fraction") {
    CHECK(rel(bessel_y_integral(1.5, 2.0).real(), std::cyl_neumann(1.5, 2.0)) < 1e-9);
}
