/**
 * @file test_timedecay.cpp
 * @brief Propagator matrix elements, decay fits and Fourier asymptotics.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "magres/error.hpp"
#include "magres/quadrature.hpp"
#include "magres/timedecay.hpp"

using namespace magres;
using namespace magres::timedecay;

namespace {
constexpr double kPi = 3.14159265358979323846;

double norm2(const TestState& st) {
    quad::AdaptiveOptions o;
    o.abs_tol = 1e-15;
    o.rel_tol = 1e-13;
    return quad::integrate([&](double r) { return r * state_profile(st, r) * state_profile(st, r); },
                           std::vector<double>{0.2, 0.7, 1.0, 2.0, 3.0, 4.5, 5.0}, o)
        .value;
}
}  // namespace

TEST_CASE("test states are normalised in L^2(r dr)") {
    CHECK(norm2(TestState{}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(norm2(TestState{0, 2.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(state_profile(TestState{}, 0.1) == 0.0);
    CHECK(state_profile(TestState{}, 5.5) == 0.0);
}

TEST_CASE("the propagator at t = 0 is the overlap and stays bounded") {
    const Propagator p(0.3, TestState{}, TestState{});
    const auto e0 = p.element(0.0);
    CHECK(std::abs(e0.value - 1.0) <= 1e-3);
    for (double t : {1.0, 10.0, 100.0}) CHECK(std::abs(p.element(t).value) <= 1.0 + 1e-6);
}

TEST_CASE("different channels do not couple") {
    const auto e = propagator_element(0.3, TestState{0}, TestState{1}, 10.0);
    CHECK(std::abs(e.value) == 0.0);
    CHECK(g1_element(0.3, TestState{1}, TestState{1}) == std::complex<double>(0.0, 0.0));
    CHECK(std::abs(g1_element(0.3, TestState{0}, TestState{0})) > 0.0);
}

TEST_CASE("long-time magnitude follows t^{-1-mu}") {
    const Propagator p(0.3, TestState{}, TestState{});
    const double r = std::abs(p.element(100.0).value) / std::abs(p.element(1000.0).value);
    CHECK(r == doctest::Approx(std::pow(10.0, 1.3)).epsilon(0.15));
}

TEST_CASE("a larger energy window leaves less spectral mass outside") {
    PropagatorOptions a, b;
    a.Lambda = 10.0;
    b.Lambda = 20.0;
    const Propagator pa(0.3, TestState{}, TestState{}, a), pb(0.3, TestState{}, TestState{}, b);
    CHECK(pb.windowed_out_mass() < pa.windowed_out_mass());
}

TEST_CASE("decay_fit input validation and synthetic recovery") {
    std::vector<PropagatorElement> few;
    for (int i = 0; i < 5; ++i) few.push_back({std::pow(10.0, 2.0 + 0.5 * i), {1.0, 0.0}, 0.0});
    CHECK_THROWS_AS(decay_fit(few), CheckFailure);

    std::vector<PropagatorElement> pw, lg;
    for (int i = 0; i < 16; ++i) {
        const double t = std::pow(10.0, 2.0 + 2.0 * i / 15.0);
        pw.push_back({t, std::polar(0.7 * std::pow(t, -1.3), 0.4), 0.0});
        const double L = std::log(t);
        lg.push_back({t, {2.0 / (t * L * L), 0.0}, 0.0});
    }
    const auto f = decay_fit(pw);
    CHECK(f.model == DecayModel::Power);
    CHECK(f.exponent == doctest::Approx(1.3).epsilon(1e-8));
    CHECK(std::abs(f.coefficient) == doctest::Approx(0.7).epsilon(1e-8));
    const auto g = decay_fit(lg);
    CHECK(g.model == DecayModel::PowerLog);
    CHECK(g.residual_ratio < 1e-6);
}

TEST_CASE("Fourier asymptotics agree with the contour oracle") {
    const auto c = fourier_check(0.3, 100.0);
    CHECK(std::abs(c.modulus_ratio - 1.0) <= 0.05);
    CHECK(std::abs(c.phase_diff) <= 0.05);
    const auto l = fourier_log_check(1, 1e3);
    CHECK(l.oracle_rel_diff <= 1e-6);
}

TEST_CASE("the prefactor phase") {
    const TestState st{};
    const double mu = 0.3;
    const auto pc = prefactor_check(0.3, st, st, 1e2, 1e4, 16);
    const std::complex<double> K =
        std::complex<double>(0.0, 1.0 / kPi) * std::sin(kPi * mu) * std::polar(1.0, kPi * mu / 2.0) * std::tgamma(1.0 + mu) *
        g1_element(0.3, st, st);
    CHECK(std::abs(pc.predicted - K) <= 1e-12 * std::abs(K));
    CHECK(pc.modulus_error <= 0.05);
    CHECK(pc.phase_error <= 0.05);
}
