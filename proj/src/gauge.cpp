/**
 * @file gauge.cpp
 * @brief Field models, Poincare and corrected gauges, and gauge diagnostics.
 */
#include "magres/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "magres/error.hpp"
#include "magres/fit.hpp"
#include "magres/quadrature.hpp"

namespace magres::gauge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAngularSamples = 512;

quad::AdaptiveOptions ray_options() {
    quad::AdaptiveOptions o;
    o.abs_tol = 1e-15;
    o.rel_tol = 1e-12;
    o.max_intervals = 2000;
    return o;
}

double field_on_ray(const FieldDescriptor& f, double z, double c, double s) {
    if (f.radial) return f.radial_profile(z);
    return f.B(z * c, z * s);
}

// int_a^b B(z, theta) z dz with b possibly infinite.
double ray_integral(const FieldDescriptor& f, double theta, double a, double b) {
    if (f.support > 0.0) b = std::min(b, f.support);
    if (!(b > a)) return 0.0;
    const double c = std::cos(theta), s = std::sin(theta);
    auto g = [&](double z) { return field_on_ray(f, z, c, s) * z; };
    std::vector<double> pts{a};
    std::vector<double> cand = f.radial_breaks;
    cand.push_back(f.extent);
    cand.push_back(2.0 * f.extent);
    std::sort(cand.begin(), cand.end());
    for (double p : cand)
        if (p > pts.back() && p < b) pts.push_back(p);
    const auto opt = ray_options();
    double total = 0.0;
    if (std::isfinite(b)) {
        pts.push_back(b);
        total = quad::integrate(g, pts, opt).value;
    } else {
        if (pts.size() > 1) total = quad::integrate(g, pts, opt).value;
        total += quad::integrate_to_infinity(g, pts.back(), opt, std::max(1.0, f.extent)).value;
    }
    return total;
}

Vec2 e_theta(const Vec2& x) {
    const double r = std::hypot(x[0], x[1]);
    return {-x[1] / r, x[0] / r};
}

Vec2 e_r(const Vec2& x) {
    const double r = std::hypot(x[0], x[1]);
    return {x[0] / r, x[1] / r};
}

double radial_a(const FieldDescriptor& f, double r) {
    if (f.radial_potential) return f.radial_potential(r);
    return ray_integral(f, 0.0, 0.0, r) / r;
}

}  // namespace

FieldDescriptor gaussian_field(double amplitude, double width, double cx, double cy) {
    if (!(width > 0.0)) throw DomainError("gaussian_field: width must be positive");
    FieldDescriptor f;
    f.family = "gaussian";
    f.B = [=](double x, double y) {
        const double dx = x - cx, dy = y - cy;
        return amplitude * std::exp(-(dx * dx + dy * dy) / (width * width));
    };
    f.decay_exponent = std::numeric_limits<double>::infinity();
    f.radial = (cx == 0.0 && cy == 0.0);
    if (f.radial) {
        f.radial_profile = [=](double r) { return amplitude * std::exp(-r * r / (width * width)); };
        f.radial_potential = [=](double r) {
            if (r == 0.0) return 0.0;
            return -amplitude * width * width / (2.0 * r) * std::expm1(-r * r / (width * width));
        };
    }
    f.extent = std::hypot(cx, cy) + 3.0 * width;
    f.analytic_flux = amplitude * width * width / 2.0;
    f.has_analytic_flux = true;
    return f;
}

FieldDescriptor gaussian_field_with_flux(double alpha, double width, double cx, double cy) {
    if (!(width > 0.0)) throw DomainError("gaussian_field_with_flux: width must be positive");
    return gaussian_field(2.0 * alpha / (width * width), width, cx, cy);
}

FieldDescriptor bump_field(double amplitude, double radius) {
    if (!(radius > 0.0)) throw DomainError("bump_field: radius must be positive");
    FieldDescriptor f;
    f.family = "bump";
    auto prof = [=](double r) {
        const double t = r / radius;
        if (t >= 1.0) return 0.0;
        return amplitude * std::exp(1.0 - 1.0 / (1.0 - t * t));
    };
    f.B = [=](double x, double y) { return prof(std::hypot(x, y)); };
    f.radial_profile = prof;
    f.radial = true;
    f.decay_exponent = std::numeric_limits<double>::infinity();
    f.extent = radius;
    f.support = radius;
    f.radial_breaks = {radius};
    f.analytic_flux = ray_integral(f, 0.0, 0.0, radius);
    f.has_analytic_flux = false;
    return f;
}

FieldDescriptor b0_field(double alpha) {
    FieldDescriptor f;
    f.family = "b0";
    auto prof = [=](double r) { return r < 1.0 ? alpha / r : 0.0; };
    f.B = [=](double x, double y) { return prof(std::hypot(x, y)); };
    f.radial_profile = prof;
    f.radial_potential = [=](double r) { return r < 1.0 ? alpha : alpha / r; };
    f.radial = true;
    f.smoothness = "piecewise";
    f.decay_exponent = std::numeric_limits<double>::infinity();
    f.extent = 1.0;
    f.support = 1.0;
    f.radial_breaks = {1.0};
    f.analytic_flux = alpha;
    f.has_analytic_flux = true;
    return f;
}

FieldDescriptor zero_flux_b0_field() {
    FieldDescriptor f;
    f.family = "zero-flux-b0";
    auto prof = [](double r) { return r < 1.0 ? (1.0 - r * r) * (1.0 - 3.0 * r * r) : 0.0; };
    f.B = [=](double x, double y) { return prof(std::hypot(x, y)); };
    f.radial_profile = prof;
    f.radial_potential = [](double r) {
        if (r >= 1.0) return 0.0;
        const double q = 1.0 - r * r;
        return 0.5 * r * q * q;
    };
    f.radial = true;
    f.smoothness = "piecewise";
    f.decay_exponent = std::numeric_limits<double>::infinity();
    f.extent = 1.0;
    f.support = 1.0;
    f.radial_breaks = {1.0};
    f.analytic_flux = 0.0;
    f.has_analytic_flux = true;
    return f;
}

FieldDescriptor zero_field() {
    FieldDescriptor f;
    f.family = "zero";
    f.B = [](double, double) { return 0.0; };
    f.radial_profile = [](double) { return 0.0; };
    f.radial_potential = [](double) { return 0.0; };
    f.radial = true;
    f.decay_exponent = std::numeric_limits<double>::infinity();
    f.extent = 1.0;
    f.analytic_flux = 0.0;
    f.has_analytic_flux = true;
    return f;
}

FieldDescriptor power_law_field(double amplitude, double s) {
    if (!(s > 2.0)) throw DomainError("power_law_field: s must exceed 2 for finite flux");
    FieldDescriptor f;
    f.family = "power";
    auto prof = [=](double r) { return amplitude * std::pow(1.0 + r * r, -0.5 * s); };
    f.B = [=](double x, double y) { return prof(std::hypot(x, y)); };
    f.radial_profile = prof;
    f.radial_potential = [=](double r) {
        if (r == 0.0) return 0.0;
        return -amplitude * std::expm1((1.0 - 0.5 * s) * std::log1p(r * r)) / ((s - 2.0) * r);
    };
    f.radial = true;
    f.decay_exponent = s;
    f.extent = 1.0;
    f.analytic_flux = amplitude / (s - 2.0);
    f.has_analytic_flux = true;
    return f;
}

void check_decay(const FieldDescriptor& field) {
    const double s = field.decay_exponent;
    if (!(s > 4.0)) {
        std::ostringstream os;
        os << "check_decay: declared decay exponent " << s << " does not exceed 4";
        throw CheckFailure(os.str());
    }
    // |d^beta B| (1 + r)^s on radii 1..1e3 must not grow.
    const int nr = 16, na = 4;
    std::vector<double> envelope(nr, 0.0);
    for (int i = 0; i < nr; ++i) {
        const double r = std::pow(10.0, 3.0 * i / (nr - 1));
        if (field.support > 0.0 && r >= field.support) continue;
        const double h = 1e-3 * r;
        const double w = std::isfinite(s) ? std::pow(1.0 + r, s) : 1.0;
        for (int j = 0; j < na; ++j) {
            const double th = 2.0 * kPi * (j + 0.25) / na;
            const double x = r * std::cos(th), y = r * std::sin(th);
            const double b = field.B(x, y);
            const double bx = (field.B(x + h, y) - field.B(x - h, y)) / (2.0 * h);
            const double bxx = (field.B(x + h, y) - 2.0 * b + field.B(x - h, y)) / (h * h);
            const double m = std::max({std::abs(b), std::abs(bx), std::abs(bxx)});
            if (!std::isfinite(s)) {
                if (r > 10.0 * field.extent && m > 1e-30)
                    throw CheckFailure("check_decay: field declared superpolynomially decaying is not small");
                continue;
            }
            envelope[i] = std::max(envelope[i], m * w);
        }
    }
    if (!std::isfinite(s)) return;
    double head = 0.0, tail = 0.0;
    for (int i = 0; i < nr / 3; ++i) head = std::max(head, envelope[i]);
    for (int i = 2 * nr / 3; i < nr; ++i) tail = std::max(tail, envelope[i]);
    if (tail > 10.0 * head + 1e-300) throw CheckFailure("check_decay: field decays slower than declared");
}

double psi_profile(const FieldDescriptor& field, double theta) {
    return ray_integral(field, theta, 0.0, std::numeric_limits<double>::infinity());
}

double flux(const FieldDescriptor& field) {
    if (field.radial) return psi_profile(field, 0.0);
    double sum = 0.0;
    for (int j = 0; j < kAngularSamples; ++j) sum += psi_profile(field, 2.0 * kPi * j / kAngularSamples);
    return sum / kAngularSamples;
}

double disc_flux(const FieldDescriptor& field, double R) {
    if (field.radial) return ray_integral(field, 0.0, 0.0, R);
    double sum = 0.0;
    for (int j = 0; j < kAngularSamples; ++j) sum += ray_integral(field, 2.0 * kPi * j / kAngularSamples, 0.0, R);
    return sum / kAngularSamples;
}

Vec2 reference_potential(double alpha, const Vec2& x) {
    const double r = std::hypot(x[0], x[1]);
    if (r == 0.0) return {0.0, 0.0};
    const double a = r < 1.0 ? alpha : alpha / r;
    const Vec2 t = e_theta(x);
    return {a * t[0], a * t[1]};
}

Vec2 zero_flux_reference_potential(const Vec2& x) {
    const double r = std::hypot(x[0], x[1]);
    if (r == 0.0 || r >= 1.0) return {0.0, 0.0};
    const double q = 1.0 - r * r;
    const double a = 0.5 * r * q * q;
    const Vec2 t = e_theta(x);
    return {a * t[0], a * t[1]};
}

Vec2 poincare_potential(const FieldDescriptor& field, const Vec2& x) {
    const double r = std::hypot(x[0], x[1]);
    if (r == 0.0) return {0.0, 0.0};
    if (field.radial) {
        const double a = radial_a(field, r);
        const Vec2 t = e_theta(x);
        return {a * t[0], a * t[1]};
    }
    // int_0^1 B(t x) t dt = r^{-2} int_0^r B(z, theta) z dz.
    const double I = ray_integral(field, std::atan2(x[1], x[0]), 0.0, r) / (r * r);
    return {-x[1] * I, x[0] * I};
}

std::array<double, 3> cutoff(double r) {
    if (r <= 1.0) return {0.0, 0.0, 0.0};
    if (r >= 2.0) return {1.0, 0.0, 0.0};
    const double s = r - 1.0, t = 1.0 - s;
    const double q = 1.0 / s - 1.0 / t;
    if (q > 700.0) return {0.0, 0.0, 0.0};
    if (q < -700.0) return {1.0, 0.0, 0.0};
    const double h = 1.0 / (1.0 + std::exp(q));
    const double dq = -1.0 / (s * s) - 1.0 / (t * t);
    const double d2q = 2.0 / (s * s * s) - 2.0 / (t * t * t);
    const double h1 = -h * (1.0 - h) * dq;
    const double h2 = -(h1 * (1.0 - 2.0 * h) * dq + h * (1.0 - h) * d2q);
    return {h, h1, h2};
}

CorrectedGauge::CorrectedGauge(FieldDescriptor field, double declared_flux) : field_(std::move(field)) {
    const int N = kAngularSamples;
    psi_.assign(N, 0.0);
    if (field_.radial) {
        std::fill(psi_.begin(), psi_.end(), psi_profile(field_, 0.0));
    } else {
        for (int j = 0; j < N; ++j) psi_[j] = psi_profile(field_, 2.0 * kPi * j / N);
    }
    if (field_.radial) {
        alpha_ = psi_.front();
    } else {
        double sum = 0.0;
        for (double p : psi_) sum += p;
        alpha_ = sum / N;
    }
    if (field_.has_analytic_flux && std::abs(alpha_ - field_.analytic_flux) <= 1e-10 * std::max(1.0, std::abs(alpha_)))
        alpha_ = field_.analytic_flux;
    if (std::isfinite(declared_flux) && std::abs(alpha_ - declared_flux) > 1e-6) {
        std::ostringstream os;
        os.precision(17);
        os << "CorrectedGauge: computed flux " << alpha_ << " differs from declared " << declared_flux;
        throw CheckFailure(os.str());
    }
    if (!field_.radial) {
        coef_.assign(N / 2 - 1, cplx(0.0));
        for (int k = 1; k < N / 2; ++k) {
            cplx c = 0.0;
            for (int j = 0; j < N; ++j) c += psi_[j] * std::polar(1.0, -2.0 * kPi * k * j / N);
            coef_[k - 1] = c / static_cast<double>(N);
        }
    }
}

double CorrectedGauge::phi(double theta) const {
    double s = 0.0;
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        s += std::real(coef_[i] * (std::polar(1.0, k * theta) - 1.0) / cplx(0.0, k));
    }
    return -2.0 * s;
}

double CorrectedGauge::dphi(double theta) const {
    double s = 0.0;
    for (std::size_t i = 0; i < coef_.size(); ++i) s += std::real(coef_[i] * std::polar(1.0, (i + 1.0) * theta));
    return -2.0 * s;
}

double CorrectedGauge::d2phi(double theta) const {
    double s = 0.0;
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        s += std::real(cplx(0.0, k) * coef_[i] * std::polar(1.0, k * theta));
    }
    return -2.0 * s;
}

Vec2 CorrectedGauge::reference(const Vec2& x) const {
    if (std::abs(alpha_) < 1e-12) return zero_flux_reference_potential(x);
    return reference_potential(alpha_, x);
}

Vec2 CorrectedGauge::A(const Vec2& x) const {
    const double r = std::hypot(x[0], x[1]);
    if (r == 0.0) return {0.0, 0.0};
    if (field_.radial) return poincare_potential(field_, x);
    if (r >= 2.0) {
        const Vec2 a0 = reference_potential(alpha_, x);
        const Vec2 d = difference(x);
        return {a0[0] + d[0], a0[1] + d[1]};
    }
    const Vec2 ap = poincare_potential(field_, x);
    const double th = std::atan2(x[1], x[0]);
    const auto chi = cutoff(r);
    if (chi[0] == 0.0 && chi[1] == 0.0) return ap;
    const double ph = phi(th), dph = dphi(th);
    const Vec2 er = e_r(x), et = e_theta(x);
    const double cr = chi[1] * ph, ct = chi[0] * dph / r;
    return {ap[0] + cr * er[0] + ct * et[0], ap[1] + cr * er[1] + ct * et[1]};
}

Vec2 CorrectedGauge::difference(const Vec2& x) const {
    const double r = std::hypot(x[0], x[1]);
    if (r >= 2.0) {
        const double T = ray_integral(field_, std::atan2(x[1], x[0]), r, std::numeric_limits<double>::infinity());
        const Vec2 et = e_theta(x);
        return {-T / r * et[0], -T / r * et[1]};
    }
    const Vec2 a = A(x), a0 = reference(x);
    return {a[0] - a0[0], a[1] - a0[1]};
}

double CorrectedGauge::divergence(const Vec2& x) const {
    if (field_.radial) return 0.0;
    const double r = std::hypot(x[0], x[1]);
    if (r >= 2.0) {
        const double th = std::atan2(x[1], x[0]);
        const double d = 1e-4;
        const double inf = std::numeric_limits<double>::infinity();
        const double tp = ray_integral(field_, th + d, r, inf);
        const double tm = ray_integral(field_, th - d, r, inf);
        return -(tp - tm) / (2.0 * d * r * r);
    }
    return divergence_fd([this](const Vec2& y) { return A(y); }, x, 1e-3 * std::max(r, 0.1));
}

PerturbationCoefficients perturbation_coefficients(const CorrectedGauge& gauge,
                                                   const std::function<double(double, double)>& V,
                                                   const Vec2& x) {
    PerturbationCoefficients p;
    const Vec2 d = gauge.difference(x);
    const Vec2 a0 = gauge.reference(x);
    const cplx two_i(0.0, 2.0);
    p.first_order = {two_i * d[0], two_i * d[1]};
    p.divergence_term = cplx(0.0, gauge.divergence(x));
    p.quadratic = d[0] * (2.0 * a0[0] + d[0]) + d[1] * (2.0 * a0[1] + d[1]);
    p.potential = V ? V(x[0], x[1]) : 0.0;
    return p;
}

namespace {

// Fourth-order central difference of g along direction e.
double diff4(const std::function<double(const Vec2&)>& g, const Vec2& x, const Vec2& e, double h) {
    auto at = [&](double t) { return g({x[0] + t * e[0], x[1] + t * e[1]}); };
    return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
}

}  // namespace

double curl_fd(const std::function<Vec2(const Vec2&)>& A, const Vec2& x, double h) {
    const double d2 = diff4([&](const Vec2& y) { return A(y)[1]; }, x, {1.0, 0.0}, h);
    const double d1 = diff4([&](const Vec2& y) { return A(y)[0]; }, x, {0.0, 1.0}, h);
    return d2 - d1;
}

double divergence_fd(const std::function<Vec2(const Vec2&)>& A, const Vec2& x, double h) {
    const double d1 = diff4([&](const Vec2& y) { return A(y)[0]; }, x, {1.0, 0.0}, h);
    const double d2 = diff4([&](const Vec2& y) { return A(y)[1]; }, x, {0.0, 1.0}, h);
    return d1 + d2;
}

double circulation(const std::function<Vec2(const Vec2&)>& A, double R, int n) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        const double c = std::cos(th), sn = std::sin(th);
        const Vec2 a = A({R * c, R * sn});
        s += -a[0] * sn + a[1] * c;
    }
    return s * R * 2.0 * kPi / n;
}

GaugeReport gauge_report(const FieldDescriptor& field, const std::vector<double>& radii, std::uint64_t seed,
                         int curl_samples, double stokes_radius) {
    check_decay(field);
    CorrectedGauge g(field, field.has_analytic_flux ? field.analytic_flux : std::numeric_limits<double>::quiet_NaN());
    GaugeReport rep;
    rep.flux = g.alpha();
    auto Af = [&g](const Vec2& y) { return g.A(y); };

    std::mt19937_64 rng(seed);
    const double rmax = std::max(4.0, 1.5 * field.extent);
    std::uniform_real_distribution<double> ur(0.1, rmax), ut(0.0, 2.0 * kPi);
    std::vector<double> avoid = field.radial_breaks;
    if (field.support > 0.0) avoid.push_back(field.support);
    double bmax = 0.0, emax = 0.0;
    int taken = 0;
    while (taken < curl_samples) {
        const double r = ur(rng), th = ut(rng);
        const double h = 1e-3 * std::min(1.0, r);
        bool near = false;
        for (double b : avoid)
            if (std::abs(r - b) < 4.0 * h) near = true;
        if (near) continue;
        const Vec2 x{r * std::cos(th), r * std::sin(th)};
        const double b = field.B(x[0], x[1]);
        emax = std::max(emax, std::abs(curl_fd(Af, x, h) - b));
        bmax = std::max(bmax, std::abs(b));
        ++taken;
    }
    rep.curl_max_err = bmax > 0.0 ? emax / bmax : emax;

    std::vector<double> rs = radii;
    if (rs.empty())
        for (int i = 0; i < 12; ++i) rs.push_back(10.0 * std::pow(10.0, i / 11.0));
    std::vector<double> dA(rs.size(), 0.0), dv(rs.size(), 0.0);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        for (int j = 0; j < 8; ++j) {
            const double th = 2.0 * kPi * (j + 0.3) / 8.0;
            const Vec2 x{rs[i] * std::cos(th), rs[i] * std::sin(th)};
            const Vec2 d = g.difference(x);
            dA[i] = std::max(dA[i], std::hypot(d[0], d[1]));
            dv[i] = std::max(dv[i], std::abs(g.divergence(x)));
        }
    }
    const auto sa = fit::log_log_slope(rs, dA);
    rep.decay_slope_A_minus_A0 = sa.slope;
    rep.decay_exact = sa.exact_zero;
    rep.decay_superpolynomial = sa.superpolynomial;
    const auto sd = fit::log_log_slope(rs, dv);
    rep.div_decay_slope = sd.slope;
    rep.div_exact = sd.exact_zero;

    rep.stokes_defect = std::abs(circulation(Af, stokes_radius) - 2.0 * kPi * disc_flux(field, stokes_radius));

    if (field.radial) {
        rep.phi_closure = 0.0;
    } else {
        auto integrand = [&](double t) { return g.alpha() - psi_profile(field, t); };
        quad::AdaptiveOptions o;
        o.abs_tol = 1e-11;
        o.rel_tol = 1e-10;
        rep.phi_closure = std::abs(quad::integrate(integrand, 0.0, 2.0 * kPi, o).value);
    }

    if (rep.curl_max_err > 1e-4) rep.failures.push_back("curl");
    if (rep.stokes_defect > 1e-5) rep.failures.push_back("stokes");
    if (rep.phi_closure > 1e-8) rep.failures.push_back("phi-closure");
    if (!sa.exact_zero && !sa.superpolynomial && sa.slope > -2.0) rep.failures.push_back("decay");
    if (!sd.exact_zero && !sd.superpolynomial && sd.slope > -3.0) rep.failures.push_back("divergence-decay");
    rep.passed = rep.failures.empty();
    return rep;
}

}  // namespace magres::gauge
