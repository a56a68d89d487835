/**
 * @file oracle.cpp
 * @brief ODE-shooting Green's functions and 50-digit series references.
 */
#include "magres/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/numeric/odeint.hpp>

#include "magres/error.hpp"
#include "magres/specfun.hpp"

namespace magres::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
using State = std::array<cplx, 2>;
namespace odeint = boost::numeric::odeint;
using Stepper = odeint::runge_kutta_fehlberg78<State>;

// f_tt = q(r) f with r = e^t.
struct RadialSystem {
    double alpha;
    int m;
    cplx lambda;
    bool interior;
    void operator()(const State& x, State& dxdt, double t) const {
        const double r = std::exp(t);
        const double ra0 = interior ? alpha * r : alpha;
        const double s = m + ra0;
        const cplx q = s * s - lambda * (r * r);
        dxdt[0] = x[1];
        dxdt[1] = q * x[0];
    }
};

// Integrates from r_start through the sorted radii `targets` (monotone in the
// direction of travel), switching the potential at r = 1.
std::vector<State> shoot(double alpha, int m, cplx lambda, State x, double r_start, const std::vector<double>& targets,
                         const OdeOptions& opt) {
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, Stepper());
    std::vector<State> out;
    double r_cur = r_start;
    for (double target : targets) {
        // Split at r = 1 where the potential changes form.
        std::vector<double> legs;
        if ((r_cur < 1.0 && target > 1.0) || (r_cur > 1.0 && target < 1.0)) legs.push_back(1.0);
        legs.push_back(target);
        for (double end : legs) {
            if (end == r_cur) continue;
            const bool interior = std::max(r_cur, end) <= 1.0;
            RadialSystem sys{alpha, m, lambda, interior};
            const double t0 = std::log(r_cur), t1 = std::log(end);
            const double dt = (t1 > t0 ? 1.0 : -1.0) * std::min(1e-3, std::abs(t1 - t0));
            odeint::integrate_adaptive(stepper, sys, x, t0, t1, dt);
            r_cur = end;
        }
        for (const auto& v : x)
            if (!std::isfinite(std::abs(v))) throw ConvergenceError("oracle: integration produced non-finite values");
        out.push_back(x);
    }
    return out;
}

}  // namespace

double outer_radius(cplx lambda) { return std::max(50.0, 40.0 / std::sqrt(std::abs(lambda))); }

OdeSolution regular_solution(double alpha, int m, cplx lambda, const std::vector<double>& grid, const OdeOptions& opt) {
    if (!std::is_sorted(grid.begin(), grid.end()) || grid.empty() || grid.front() < opt.r0)
        throw DomainError("regular_solution: grid must be increasing and start above r0");
    const int p = std::abs(m);
    const double beta = 2.0 * m * alpha;
    const cplx k2 = alpha * alpha - lambda;
    // Leading Frobenius coefficients, normalised so that f(r0) ~ 1.
    const double r0 = opt.r0;
    const cplx c1 = beta / (1.0 + 2.0 * p);
    const cplx c2 = (beta * c1 + k2) / (2.0 * (2.0 + 2.0 * p));
    const cplx c3 = (beta * c2 + k2 * c1) / (3.0 * (3.0 + 2.0 * p));
    State x{1.0 + c1 * r0 + c2 * r0 * r0 + c3 * r0 * r0 * r0,
            static_cast<double>(p) + (p + 1.0) * c1 * r0 + (p + 2.0) * c2 * r0 * r0 + (p + 3.0) * c3 * r0 * r0 * r0};
    const auto states = shoot(alpha, m, lambda, x, r0, grid, opt);
    OdeSolution sol{m, lambda, grid, {}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sol.f.push_back(states[i][0]);
        sol.df.push_back(states[i][1] / grid[i]);
    }
    return sol;
}

OdeSolution outgoing_solution(double alpha, int m, cplx lambda, const std::vector<double>& grid,
                              const OdeOptions& opt) {
    if (!std::is_sorted(grid.begin(), grid.end()) || grid.empty())
        throw DomainError("outgoing_solution: grid must be increasing");
    const double R = std::max(outer_radius(lambda), 1.5 * grid.back());
    const cplx k = std::sqrt(lambda);
    if (k.imag() < 0.0) throw DomainError("outgoing_solution: requires Im lambda >= 0");
    const double nu = std::abs(m + alpha);
    const cplx z = k * R;
    // Hankel series S(z) = sum_j i^j a_j(nu) z^{-j}; phi = e^{iz} z^{-1/2} S(z).
    cplx S = 1.0, dS = 0.0, term = 1.0;
    double prev = HUGE_VAL;
    for (int j = 1; j < 200; ++j) {
        const double l = 2.0 * j - 1.0;
        term *= cplx(0.0, 1.0) * (4.0 * nu * nu - l * l) / (8.0 * j * z);
        const double mag = std::abs(term);
        if (mag > prev) break;
        S += term;
        dS += -static_cast<double>(j) * term / z;
        prev = mag;
        if (mag < 1e-18) break;
    }
    const cplx dphi_dz = (cplx(0.0, 1.0) - 0.5 / z) * S + dS;
    State x{S, z * dphi_dz};
    std::vector<double> targets(grid.rbegin(), grid.rend());
    const auto states = shoot(alpha, m, lambda, x, R, targets, opt);
    OdeSolution sol{m, lambda, grid, std::vector<cplx>(grid.size()), std::vector<cplx>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::size_t j = grid.size() - 1 - i;
        sol.f[j] = states[i][0];
        sol.df[j] = states[i][1] / grid[j];
    }
    return sol;
}

cplx ode_green(double alpha, int m, cplx lambda, double r, double rp, const OdeOptions& opt) {
    if (!(r > 0.0 && rp > 0.0)) throw DomainError("ode_green: radii must be positive");
    if (lambda.imag() < 0.0) throw DomainError("ode_green: requires Im lambda >= 0");
    const double lo = std::min(r, rp), hi = std::max(r, rp);
    std::vector<double> g_reg{lo, 1.0}, g_out{1.0, hi};
    std::sort(g_reg.begin(), g_reg.end());
    std::sort(g_out.begin(), g_out.end());
    const auto reg = regular_solution(alpha, m, lambda, g_reg, opt);
    const auto out = outgoing_solution(alpha, m, lambda, g_out, opt);
    const std::size_t i1 = (g_reg[1] == 1.0) ? 1 : 0;
    const std::size_t j1 = (g_out[0] == 1.0) ? 0 : 1;
    const cplx W = reg.df[i1] * out.f[j1] - reg.f[i1] * out.df[j1];
    if (std::abs(W) < 1e-12 * std::abs(reg.f[i1] * out.f[j1]))
        throw ConvergenceError("ode_green: Wronskian below 1e-12 (resonant configuration)");
    const std::size_t ilo = (g_reg[0] == lo) ? 0 : 1;
    const std::size_t jhi = (g_out[1] == hi) ? 1 : 0;
    return reg.f[ilo] * out.f[jhi] / W;
}

cplx ode_green_boundary(double alpha, int m, double lambda, double r, double rp, bool plus_side,
                        const OdeOptions& opt) {
    const cplx g4 = ode_green(alpha, m, cplx(lambda, 1e-4), r, rp, opt);
    const cplx g5 = ode_green(alpha, m, cplx(lambda, 1e-5), r, rp, opt);
    const cplx g = (10.0 * g5 - g4) / 9.0;
    return plus_side ? g : std::conj(g);
}

cplx free_green(int m, double lambda, double r, double rp) {
    if (!(lambda > 0.0)) throw DomainError("free_green: lambda must be positive");
    const double k = std::sqrt(lambda);
    const double nu = std::abs(m);
    const auto lo = specfun::bessel_jy(nu, k * std::min(r, rp));
    const auto hi = specfun::bessel_jy(nu, k * std::max(r, rp));
    return cplx(0.0, kPi / 2.0) * lo.j * cplx(hi.j, hi.y);
}

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

Reference make_reference(const Big& v) {
    std::ostringstream os;
    os.precision(40);
    os << v;
    return {static_cast<double>(v), os.str()};
}

Big kummer_sum(const Big& a, const Big& b, const Big& z, int terms) {
    Big term = 1, sum = 1;
    for (int n = 0; n < terms; ++n) {
        term *= (a + n) * z / ((b + n) * (n + 1));
        sum += term;
    }
    return sum;
}

}  // namespace

Reference kummer_m_reference(double a, double b, double z, int terms) {
    return make_reference(kummer_sum(Big(a), Big(b), Big(z), terms));
}

Reference bessel_j_reference(double nu, double z, int terms) {
    const Big bz(z), bnu(nu);
    const Big q = -bz * bz / 4;
    Big term = 1 / boost::math::tgamma(bnu + 1);
    Big sum = term;
    for (int k = 1; k < terms; ++k) {
        term *= q / (Big(k) * (bnu + k));
        sum += term;
    }
    return make_reference(sum * boost::multiprecision::pow(bz / 2, bnu));
}

Reference gamma_integral_reference(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_integral_reference: x must be positive");
    using L = long double;
    const L xl = x;
    boost::math::quadrature::tanh_sinh<L> ts;
    boost::math::quadrature::exp_sinh<L> es;
    // Split at t = 1; near t = 0 substitute t = w^(1/x).
    auto head = [&](L w) -> L {
        const L t = std::pow(w, 1.0L / xl);
        return std::exp(-t) / xl;
    };
    auto tail = [&](L t) -> L { return std::exp((xl - 1.0L) * std::log(t) - t); };
    const L i1 = ts.integrate(head, 0.0L, 1.0L);
    const L i2 = es.integrate(tail, 1.0L, std::numeric_limits<L>::infinity());
    return make_reference(Big(i1 + i2));
}

Reference interior_v_reference(double alpha, int m, double kappa, double r, int terms) {
    const int p = std::abs(m);
    const Big k(kappa), br(r);
    const Big a = Big(0.5) + p + Big(m) * Big(alpha) / k;
    const Big z = 2 * k * br;
    const Big v = exp(-k * br) * pow(z, p) * kummer_sum(a, Big(1 + 2 * p), z, terms);
    return make_reference(v);
}

}  // namespace magres::oracle
