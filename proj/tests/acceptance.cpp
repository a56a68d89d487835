/**
 * @file acceptance.cpp
 * @brief Acceptance suite: one PASS/FAIL line per criterion with pinned tolerances.
 *
 * Usage: acceptance [--only N] [--expect-fail N,M,...]
 * Without --expect-fail the exit code is 0 only when every criterion passes.
 * With it, the exit code is 0 only when the failing criteria are exactly the
 * listed ones, so a regression or an unexpected pass is reported either way.
 */
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "magres/bounds.hpp"
#include "magres/expansion.hpp"
#include "magres/gauge.hpp"
#include "magres/oracle.hpp"
#include "magres/refop.hpp"
#include "magres/specfun.hpp"
#include "magres/timedecay.hpp"

using namespace magres;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<double> log_space(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

// 1. Wronskians of J/Y, I/K and of the interior Kummer solutions.
Outcome wronskians() {
    constexpr double tol_bessel = 1e-10, tol_kummer = 1e-9;
    double wjy = 0.0, wjy_d = 0.0, wik = 0.0, wik_d = 0.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const double nu = 10.5 * i / 19.0, z = 0.1 * std::pow(500.0, j / 19.0);
            const auto a = specfun::bessel_jy(nu, z), b = specfun::bessel_jy(nu + 1.0, z);
            const double ref = 2.0 / (kPi * z);
            wjy = std::max(wjy, std::abs(b.j * a.y - b.y * a.j - ref) / ref);
            wjy_d = std::max(wjy_d, std::abs(a.j * a.yp - a.jp * a.y - ref) / ref);
            const auto c = specfun::bessel_ik(nu, z), d = specfun::bessel_ik(nu + 1.0, z);
            wik = std::max(wik, std::abs((d.k * c.i + c.k * d.i) * z - 1.0));
            wik_d = std::max(wik_d, std::abs((c.i * c.kp - c.ip * c.k) * z + 1.0));
        }
    struct P {
        double alpha;
        int m;
        double lambda;
    };
    const P pts[] = {{0.3, 0, -1.0},  {0.3, 1, 0.05}, {0.3, -1, -0.04}, {2.3, -2, 1.0},  {2.3, -1, -1.0},
                     {2.3, 0, 0.05},  {1.0, -1, 0.5}, {1.0, 2, -0.04},  {1.7, -2, 0.3}, {0.3, 3, 0.05}};
    double wk = 0.0;
    for (const auto& p : pts) {
        const auto sp = refop::spectral_point(p.alpha, p.lambda);
        const auto iv = refop::interior_solutions(p.alpha, p.m, sp, 1.0);
        const double a = refop::kummer_a(p.alpha, p.m, sp.kappa).real();
        const double ref = std::tgamma(1.0 + 2.0 * std::abs(p.m)) / std::tgamma(a);
        const double w = (iv.dv * iv.u - iv.v * iv.du).real();
        wk = std::max(wk, std::abs(w - ref) / std::abs(ref));
    }
    const bool pass = std::max({wjy, wjy_d, wik, wik_d}) <= tol_bessel && wk <= tol_kummer;
    return {pass, "J/Y " + fmt("%.2e", std::max(wjy, wjy_d)) + ", I/K " + fmt("%.2e", std::max(wik, wik_d)) +
                      " (tol 1e-10, 400 points); Kummer " + fmt("%.2e", wk) + " (tol 1e-9, 10 points)"};
}

// 2. Closed-form channel kernels against the ODE shooting oracle.
Outcome oracle_equivalence() {
    constexpr double tol = 1e-6;
    const double pairs[4][2] = {{0.3, 0.7}, {0.7, 1.8}, {1.5, 3.0}, {0.5, 1.0}};
    double worst = 0.0;
    int n = 0;
    for (double alpha : {0.3, 2.3, 1.0})
        for (int m = -3; m <= 3; ++m)
            for (double lam : {-1.0, -0.04, 0.05, 1.0})
                for (const auto& pr : pairs) {
                    const auto c = refop::channel_kernel(alpha, m, lam, refop::Side::Plus, pr[0], pr[1]);
                    const auto o = oracle::ode_green_boundary(alpha, m, lam, pr[0], pr[1]);
                    worst = std::max(worst, std::abs(c - o) / std::abs(o));
                    ++n;
                }
    return {worst <= tol, "max relative difference " + fmt("%.2e", worst) + " over " + std::to_string(n) +
                              " kernel values (tol 1e-6)"};
}

// 3. Zero flux against the free radial Green's function (i pi / 2) J H^(1).
Outcome free_case() {
    constexpr double tol = 1e-8;
    struct P {
        int m;
        double lambda, r, rp;
    };
    const P pts[] = {{0, 0.3, 0.5, 2.0}, {1, 1.0, 0.7, 1.3}, {2, 0.05, 1.5, 4.0}, {-3, 2.0, 0.9, 0.4}, {0, 4.0, 2.5, 2.5}};
    double worst = 0.0;
    for (const auto& p : pts) {
        const double k = std::sqrt(p.lambda), lo = std::min(p.r, p.rp), hi = std::max(p.r, p.rp);
        const double nu = std::abs(p.m);
        const cplx h1(std::cyl_bessel_j(nu, k * hi), std::cyl_neumann(nu, k * hi));
        const cplx ref = cplx(0.0, kPi / 2.0) * std::cyl_bessel_j(nu, k * lo) * h1;
        const auto v = refop::channel_kernel(0.0, p.m, p.lambda, refop::Side::Plus, p.r, p.rp);
        worst = std::max(worst, std::abs(v - ref) / std::abs(ref));
    }
    return {worst <= tol, "max relative difference " + fmt("%.2e", worst) + " at 5 points (tol 1e-8)"};
}

// 4. Non-integer threshold law.
Outcome threshold_law() {
    const auto lam = log_space(1e-8, 1e-3, 11);
    bool pass = true;
    std::string d;
    for (double a : {0.3, 2.3, 1.7}) {
        const auto f = expansion::threshold_fit(a, 1.7, lam);
        const bool ok = std::abs(f.fit_zero_order.exponent - f.mu) <= 0.05 && f.fit_full.exponent >= f.mu + 0.1;
        pass = pass && ok;
        d += "alpha " + fmt("%.1f", a) + ": exponent " + fmt("%.4f", f.fit_zero_order.exponent) + " (mu " +
             fmt("%.2f", f.mu) + "), remainder " + fmt("%.4f", f.fit_full.exponent) + "; ";
    }
    return {pass, d + "tol |p - mu| <= 0.05, remainder >= mu + 0.1"};
}

// 5. Integer-flux log law.
Outcome integer_law() {
    const auto lam = log_space(1e-10, 1e-6, 9);
    bool pass = true;
    std::string d;
    for (int a : {1, 2}) {
        const auto f = expansion::integer_threshold_fit(a, 1.7, lam);
        pass = pass && f.plateau_variation <= 0.1;
        d += "alpha " + std::to_string(a) + ": plateau variation " + fmt("%.4f", f.plateau_variation) + "; ";
    }
    return {pass, d + "tol 0.10"};
}

// 6. Branch consistency of the lambda^mu coefficient.
Outcome branch_consistency() {
    const auto lam = log_space(1e-6, 1e-3, 16);
    double worst = 0.0;
    for (auto pr : {std::pair{0.6, 0.9}, std::pair{0.3, 2.0}, std::pair{1.5, 3.0}}) {
        const auto b = expansion::branch_coefficient(0.3, pr.first, pr.second, lam);
        worst = std::max(worst, b.rel_diff);
    }
    return {worst <= 0.05, "max relative difference " + fmt("%.3e", worst) + " over 3 radius pairs (tol 0.05)"};
}

// 7. Gauge construction.
Outcome gauge_checks() {
    const auto field = gauge::gaussian_field_with_flux(0.3, 1.0, 0.3, -0.2);
    const auto r = gauge::gauge_report(field);
    const double flux_err = std::abs(r.flux - 0.3);
    const bool g_ok = flux_err <= 1e-8 && r.curl_max_err <= 1e-4 && r.decay_slope_A_minus_A0 <= -3.0 &&
                      r.stokes_defect <= 1e-6;
    const gauge::CorrectedGauge b0(gauge::b0_field(0.3));
    double tmax = 0.0;
    for (const auto& x : {gauge::Vec2{0.3, 0.1}, gauge::Vec2{-0.8, 0.5}, gauge::Vec2{1.5, -1.0}, gauge::Vec2{3.0, 4.0},
                          gauge::Vec2{-20.0, 7.0}}) {
        const auto c = gauge::perturbation_coefficients(b0, nullptr, x);
        tmax = std::max({tmax, std::abs(c.first_order[0]), std::abs(c.first_order[1]), std::abs(c.divergence_term),
                         std::abs(c.quadratic), std::abs(c.potential)});
    }
    return {g_ok && tmax == 0.0, "flux error " + fmt("%.2e", flux_err) + " (tol 1e-8), curl " +
                                     fmt("%.2e", r.curl_max_err) + " (tol 1e-4), slope " +
                                     fmt("%.2f", r.decay_slope_A_minus_A0) + " (<= -3), Stokes " +
                                     fmt("%.2e", r.stokes_defect) + " (tol 1e-6), max |T(B0,0)| " + fmt("%.1e", tmax)};
}

// 8. Perturbed coefficients by Nystrom discretisation.
Outcome perturbed() {
    const auto field = gauge::gaussian_field_with_flux(0.3, 1.0);
    const auto V = [](double r) { return 0.01 * std::pow(1.0 + r, -4.0); };
    const auto res = expansion::nystrom_perturbed(0.3, field, V, 1.7, {-1, 0, 1}, 1e-6);
    double id = 0.0, dual = 0.0, agree = 0.0, agree1 = 0.0, margin = 1e300;
    for (const auto& c : res.channels) {
        id = std::max(id, c.identity_residual);
        dual = std::max(dual, c.duality_residual);
        agree = std::max(agree, c.resolvent_agreement);
        agree1 = std::max(agree1, c.resolvent_agreement_first_order);
        margin = std::min(margin, c.margin);
    }
    const bool pass = id <= 1e-10 && dual <= 1e-10 && agree <= 0.02 && margin > 1e-6;
    return {pass, "identity " + fmt("%.1e", id) + ", duality " + fmt("%.1e", dual) + " (tol 1e-10); F0 vs lambda=1e-6 " +
                      fmt("%.4f", agree) + " (tol 0.02; with lambda^mu F1 " + fmt("%.4f", agree1) + "); margin " +
                      fmt("%.3f", margin) + " (> 1e-6)"};
}

// 9. Time decay.
Outcome time_decay() {
    using namespace timedecay;
    bool pass = true;
    std::string d;
    struct Case {
        double alpha;
        int m;
    };
    for (const Case c : {Case{0.3, 0}, Case{2.4, -2}}) {
        const TestState st{c.m};
        const auto f = decay_fit(Propagator(c.alpha, st, st).elements(1e2, 1e4, 24), DecayModel::Power);
        const double mu = refop::flux_params(c.alpha).mu;
        pass = pass && std::abs(f.exponent - (1.0 + mu)) <= 0.1;
        d += "alpha " + fmt("%.1f", c.alpha) + ": p " + fmt("%.4f", f.exponent) + " (target " + fmt("%.1f", 1.0 + mu) +
             " +- 0.1); ";
    }
    const TestState s1{-1};
    const auto f1 = decay_fit(Propagator(1.0, s1, s1).elements(1e2, 1e4, 24));
    pass = pass && f1.residual_ratio < 0.5;
    d += "alpha 1: residual ratio " + fmt("%.3f", f1.residual_ratio) + " (< 0.5); ";
    const TestState s0{0};
    const auto pc = prefactor_check(0.3, s0, s0);
    pass = pass && pc.modulus_error <= 0.1 && pc.phase_error <= 0.1;
    d += "prefactor |ratio| " + fmt("%.4f", std::abs(pc.ratio)) + ", arg " + fmt("%.4f", std::arg(pc.ratio)) +
         " (tol 0.1, 0.1 rad)";
    return {pass, d};
}

// 10. Fourier transforms of (lambda + i0)^nu and (log(lambda + i0))^{-k}.
Outcome fourier() {
    const auto a = timedecay::fourier_check(0.3, 100.0);
    const auto b = timedecay::fourier_log_check(1, 1e3);
    const double rel_b = std::abs(b.numeric - b.closed_form) / std::abs(b.closed_form);
    const bool pass = std::abs(a.modulus_ratio - 1.0) <= 0.02 && std::abs(a.phase_diff) <= 0.05 && rel_b <= 0.1;
    return {pass, "nu=0.3, t=100: modulus ratio " + fmt("%.4f", a.modulus_ratio) + ", phase " + fmt("%.4f", a.phase_diff) +
                      " (tol 0.02, 0.05 rad); k=1, t=1e3: relative difference to the leading term " + fmt("%.3f", rel_b) +
                      " (tol 0.10), to the rotated-contour oracle " + fmt("%.1e", b.oracle_rel_diff)};
}

// 11. Bound suite and the pointwise I K inequality.
Outcome bound_suite() {
    bool pass = true;
    std::string failed;
    for (const auto& id : bounds::bound_lemma_ids()) {
        const auto r = bounds::bound_check(id);
        if (!r.passed) {
            pass = false;
            failed += (failed.empty() ? "" : ", ") + id;
        }
    }
    double worst = 0.0;
    int n = 0;
    for (double nu : {0.1, 0.5, 1.7, 5.0, 20.0})
        for (double z : log_space(1e-3, 1e3, 10)) {
            const double k = specfun::bessel_ik(nu, z).k;
            for (int j : {0, 1}) worst = std::max(worst, 2.0 * nu * specfun::bessel_ik(nu + j, z).i * k);
            ++n;
        }
    const bool ik_ok = worst <= 1.0 + 1e-12;
    return {pass && ik_ok, (failed.empty() ? std::string("all lemmas pass") : "failing: " + failed) +
                               "; max 2 nu I_{nu+j} K_nu " + fmt("%.15f", worst) + " over " + std::to_string(n) +
                               " points, j = 0, 1 (<= 1)"};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    std::set<int> expected;
    bool have_expect = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (a == "--expect-fail" && i + 1 < argc) {
            have_expect = true;
            std::stringstream ss(argv[++i]);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) expected.insert(std::atoi(item.c_str()));
        } else {
            std::fprintf(stderr, "usage: acceptance [--only N] [--expect-fail N,M,...]\n");
            return 2;
        }
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"special-function Wronskians", wronskians},
        {"closed-form kernels vs ODE oracle", oracle_equivalence},
        {"zero flux vs free Green's function", free_case},
        {"threshold law, non-integer flux", threshold_law},
        {"threshold law, integer flux", integer_law},
        {"branch consistency of the lambda^mu coefficient", branch_consistency},
        {"corrected gauge", gauge_checks},
        {"perturbed coefficients", perturbed},
        {"time decay", time_decay},
        {"Fourier transforms", fourier},
        {"bound suite", bound_suite},
    };
    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only && id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) failed.insert(id);
        std::printf("%s [%2d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    if (!have_expect) return failed.empty() ? 0 : 1;
    if (only) {
        const bool want_fail = expected.count(only) > 0;
        return (failed.count(only) > 0) == want_fail ? 0 : 1;
    }
    if (failed != expected) {
        std::printf("failing set differs from the expected set\n");
        return 1;
    }
    std::printf("failing set matches the expected set\n");
    return 0;
}
