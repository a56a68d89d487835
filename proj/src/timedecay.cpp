/**
 * @file timedecay.cpp
 * @brief Stone-formula propagator elements, decay fits, Fourier-transform checks
 *        and the leading-coefficient check.
 */
#include "magres/timedecay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "magres/error.hpp"
#include "magres/gauge.hpp"
#include "magres/quadrature.hpp"
#include "magres/refop.hpp"
#include "magres/specfun.hpp"

namespace magres::timedecay {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

constexpr double kSupportLo = 0.2;
constexpr double kSupportHi = 5.0;
constexpr double kRamp = 0.5;
constexpr int kRadialNodes = 16;
constexpr int kDropped = 6;

const std::vector<double>& radial_edges() {
    static const std::vector<double> e{0.2, 0.7, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
    return e;
}

/// C^inf plateau equal to 1 on [0.7, 4.5] and 0 outside (0.2, 5).
double plateau(double r) {
    if (r <= kSupportLo || r >= kSupportHi) return 0.0;
    const double rise = gauge::cutoff(1.0 + (r - kSupportLo) / kRamp)[0];
    const double fall = 1.0 - gauge::cutoff(1.0 + (r - (kSupportHi - kRamp)) / kRamp)[0];
    return rise * fall;
}

double raw_profile(const TestState& st, double r) {
    const double x = (r - st.center) / st.width;
    return std::exp(-0.5 * x * x) * plateau(r);
}

void validate(const TestState& st) {
    if (!(st.width > 0.0) || !std::isfinite(st.center) || !(st.s > 0.0))
        throw DomainError("TestState: width and s must be positive and center finite");
}

/// Composite radial rule with a spectral cumulative-integration matrix per panel.
struct RadialRule {
    std::vector<double> r, w;
    Eigen::MatrixXd cum;  // cum(i, j) = int_{x_0}^{x_i} ell_j  within the panel (block diagonal)
    int panels = 0;
};

const RadialRule& radial_rule() {
    static const RadialRule rule = [] {
        RadialRule out;
        const auto& e = radial_edges();
        const int n = kRadialNodes;
        const quad::Rule ref = quad::gauss_legendre(n);
        Eigen::MatrixXd q(n, n);
        std::vector<double> pj(n + 1), pi(n + 1);
        for (int i = 0; i < n; ++i) {
            quad::legendre_values(ref.x[i], n + 1, pi.data());
            for (int j = 0; j < n; ++j) {
                quad::legendre_values(ref.x[j], n + 1, pj.data());
                double s = 0.5 * (ref.x[i] + 1.0);
                for (int k = 1; k < n; ++k) s += 0.5 * pj[k] * (pi[k + 1] - pi[k - 1]);
                q(i, j) = ref.w[j] * s;
            }
        }
        out.panels = static_cast<int>(e.size()) - 1;
        const int total = out.panels * n;
        out.cum = Eigen::MatrixXd::Zero(total, total);
        for (int p = 0; p < out.panels; ++p) {
            const double c = 0.5 * (e[p] + e[p + 1]), h = 0.5 * (e[p + 1] - e[p]);
            for (int i = 0; i < n; ++i) {
                out.r.push_back(c + h * ref.x[i]);
                out.w.push_back(h * ref.w[i]);
            }
            out.cum.block(p * n, p * n, n, n) = h * q;
        }
        return out;
    }();
    return rule;
}

/// Normalised profile values times r on the radial nodes.
std::vector<double> weighted_state(const TestState& st) {
    validate(st);
    const auto& rr = radial_rule();
    std::vector<double> u(rr.r.size());
    double norm2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double v = raw_profile(st, rr.r[i]);
        u[i] = v * rr.r[i];
        norm2 += v * v * rr.r[i] * rr.w[i];
    }
    if (!(norm2 > 0.0)) throw DomainError("TestState: profile vanishes on its support");
    const double n = 1.0 / std::sqrt(norm2);
    for (auto& x : u) x *= n;
    return u;
}

/// <f, R(lambda + i0) g> with fr = f r and gr = g r on the radial nodes, using
/// R = A(r_<) phi(r_>) / W.
cplx resolvent_element(double alpha, int m, double lambda, const std::vector<double>& fr,
                       const std::vector<double>& gr) {
    const auto& rr = radial_rule();
    const refop::ChannelResolvent ch(alpha, m, lambda, refop::Side::Plus);
    const int n = kRadialNodes;
    const std::size_t N = rr.r.size();
    std::vector<cplx> A(N), P(N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto s = ch.solutions(rr.r[i]);
        A[i] = s.f;
        P[i] = s.phi;
    }
    // Inner integrals: left(r) = int_{0.2}^r A g r', right(r) = int_r^5 phi g r'.
    std::vector<cplx> left(N), right(N);
    cplx offset = 0.0;
    for (int p = 0; p < rr.panels; ++p) {
        cplx panel_total = 0.0;
        for (int j = 0; j < n; ++j) panel_total += rr.w[p * n + j] * A[p * n + j] * gr[p * n + j];
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < n; ++j) s += rr.cum(p * n + i, p * n + j) * A[p * n + j] * gr[p * n + j];
            left[p * n + i] = offset + s;
        }
        offset += panel_total;
    }
    cplx total_phi = 0.0;
    for (std::size_t j = 0; j < N; ++j) total_phi += rr.w[j] * P[j] * gr[j];
    offset = 0.0;
    for (int p = 0; p < rr.panels; ++p) {
        cplx panel_total = 0.0;
        for (int j = 0; j < n; ++j) panel_total += rr.w[p * n + j] * P[p * n + j] * gr[p * n + j];
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < n; ++j) s += rr.cum(p * n + i, p * n + j) * P[p * n + j] * gr[p * n + j];
            right[p * n + i] = total_phi - (offset + s);
        }
        offset += panel_total;
    }
    cplx sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) sum += rr.w[i] * fr[i] * (P[i] * left[i] + A[i] * right[i]);
    return sum / ch.wronskian();
}

double energy_window(double lambda, double Lambda) {
    return 0.5 * std::erfc((lambda - 0.7 * Lambda) / (Lambda / 16.0));
}

/// Smooth even cutoff equal to 1 on |lambda| <= a and 0 for |lambda| >= b.
double lambda_cutoff(double lambda, double a, double b) {
    return 1.0 - gauge::cutoff(1.0 + (std::abs(lambda) - a) / (b - a))[0];
}

/// int_0^eps e^{-i omega x} x^nu dx by its power series (omega * eps small).
cplx low_power_piece(double nu, double eps, double omega) {
    cplx sum = 0.0, term = 1.0;
    for (int k = 0; k < 60; ++k) {
        const cplx add = term * std::pow(eps, k + 1.0 + nu) / (k + 1.0 + nu);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        term *= cplx(0.0, -omega) / static_cast<double>(k + 1);
    }
    return sum;
}

/// Half-line transform int_0^inf e^{-i omega x} F(x) chi(x) dx, with chi equal
/// to 1 on [0, a] and 0 beyond b, using geometric Filon panels from eps up to
/// a, uniform panels up to b, and `low` for [0, eps].
template <class F>
cplx half_line_transform(F&& Fx, double omega, double eps, double a, double b, cplx low) {
    static const quad::FilonLegendre fl(24);
    const auto& ref = fl.rule();
    std::vector<double> edges{eps};
    while (edges.back() * 2.0 < a) edges.push_back(edges.back() * 2.0);
    edges.push_back(a);
    const int uniform = 16;
    for (int k = 1; k <= uniform; ++k) edges.push_back(a + (b - a) * k / uniform);
    cplx sum = low;
    std::vector<cplx> g(ref.x.size());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        for (std::size_t i = 0; i < ref.x.size(); ++i) {
            const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * ref.x[i];
            g[i] = Fx(x) * lambda_cutoff(x, a, b);
        }
        sum += fl.integrate(fl.coefficients(g), lo, hi, omega);
    }
    return sum;
}

}  // namespace

double state_profile(const TestState& st, double r) {
    validate(st);
    const auto& rr = radial_rule();
    double norm2 = 0.0;
    for (std::size_t i = 0; i < rr.r.size(); ++i) {
        const double v = raw_profile(st, rr.r[i]);
        norm2 += v * v * rr.r[i] * rr.w[i];
    }
    return raw_profile(st, r) / std::sqrt(norm2);
}

Propagator::Propagator(double alpha, const TestState& f, const TestState& g, const PropagatorOptions& opt)
    : alpha_(alpha), f_(f), g_(g), opt_(opt) {
    const auto fp = refop::flux_params(alpha);
    mu_ = fp.mu;
    validate(f);
    validate(g);
    if (!(opt.Lambda > 2.0) || !(opt.lambda_min > 0.0 && opt.lambda_min < 1e-2) || opt.nodes_per_panel < 8)
        throw DomainError("Propagator: need Lambda > 2, 0 < lambda_min < 1e-2 and at least 8 nodes per panel");
    same_channel_ = f.m == g.m;
    if (!same_channel_) return;

    const auto fr = weighted_state(f);
    const auto gr = weighted_state(g);
    const quad::FilonLegendre fl(opt.nodes_per_panel);
    const auto& ref = fl.rule();

    std::vector<double> edges{opt.lambda_min};
    while (edges.back() * 2.0 < 1.0) edges.push_back(edges.back() * 2.0);
    edges.push_back(1.0);
    const int unit = static_cast<int>(std::ceil(opt.Lambda - 1.0));
    for (int k = 1; k <= unit; ++k) edges.push_back(1.0 + (opt.Lambda - 1.0) * k / unit);

    const double a2 = alpha * alpha;
    std::vector<cplx> vals(ref.x.size());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        for (std::size_t i = 0; i < ref.x.size(); ++i) {
            double lam = 0.5 * (lo + hi) + 0.5 * (hi - lo) * ref.x[i];
            if (std::abs(lam - a2) < 1e-9) lam = a2 + 1e-9;
            const double s = std::imag(resolvent_element(alpha, f.m, lam, fr, gr));
            const double w = energy_window(lam, opt.Lambda);
            vals[i] = s * w;
            windowed_out_ += 0.5 * (hi - lo) * ref.w[i] * (1.0 - w) * std::abs(s) / kPi;
        }
        panels_.push_back({lo, hi, fl.coefficients(vals)});
    }
    windowed_out_ += std::abs(spectral_density(opt.Lambda)) * opt.Lambda / kPi;
    s_min_ = spectral_density(opt.lambda_min);
    if (std::abs(f.m + alpha) < 1e-12) {
        const double le = std::log(opt.lambda_min);
        auto integrand = [&](double y) { return opt.lambda_min * std::exp(-y) * le * le / ((le - y) * (le - y)); };
        low_log_int_ = quad::integrate_to_infinity(integrand, 0.0).value;
    }
}

double Propagator::spectral_density(double lambda) const {
    if (!same_channel_) return 0.0;
    if (!(lambda > 0.0)) throw DomainError("spectral_density: lambda must be positive");
    return std::imag(resolvent_element(alpha_, f_.m, lambda, weighted_state(f_), weighted_state(g_)));
}

PropagatorElement Propagator::element(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("Propagator::element: t must be finite and >= 0");
    if (t * opt_.lambda_min > 0.05)
        throw DomainError("Propagator::element: t * lambda_min must not exceed 0.05 (lower lambda_min)");
    PropagatorElement out;
    out.t = t;
    if (!same_channel_) return out;
    static thread_local std::unique_ptr<quad::FilonLegendre> fl;
    if (!fl || fl->order() != opt_.nodes_per_panel) fl = std::make_unique<quad::FilonLegendre>(opt_.nodes_per_panel);
    cplx sum = 0.0, trunc = 0.0;
    for (const auto& p : panels_) {
        sum += fl->integrate(p.coef, p.a, p.b, t);
        auto c = p.coef;
        for (int k = opt_.nodes_per_panel - kDropped; k < opt_.nodes_per_panel; ++k) c[k] = 0.0;
        trunc += fl->integrate(c, p.a, p.b, t);
    }
    const double eps = opt_.lambda_min;
    const double nu = std::abs(f_.m + alpha_);
    cplx low;
    if (nu < 1e-12) {
        low = s_min_ * low_log_int_;
    } else {
        low = s_min_ * std::pow(eps, -nu) * low_power_piece(nu, eps, t);
    }
    sum += low;
    out.value = sum / kPi;
    out.quadrature_error = (std::abs(sum - low - trunc) + 0.5 * std::abs(low)) / kPi + windowed_out_;
    if (std::abs(out.value) > 1.0 + 1e-6)
        throw CheckFailure("Propagator::element: unitarity bound violated at t = " + std::to_string(t));
    return out;
}

std::vector<PropagatorElement> Propagator::elements(double t_min, double t_max, int points) const {
    if (!(t_min > 0.0 && t_max > t_min) || points < 2) throw DomainError("Propagator::elements: bad t-grid");
    std::vector<PropagatorElement> out;
    for (int k = 0; k < points; ++k)
        out.push_back(element(t_min * std::pow(t_max / t_min, static_cast<double>(k) / (points - 1))));
    return out;
}

PropagatorElement propagator_element(double alpha, const TestState& f, const TestState& g, double t,
                                     const PropagatorOptions& opt) {
    return Propagator(alpha, f, g, opt).element(t);
}

std::string to_string(DecayModel m) {
    switch (m) {
        case DecayModel::Power: return "power";
        case DecayModel::PowerLog: return "power-log";
        case DecayModel::Best: return "best";
    }
    return "unknown";
}

DecayFit decay_fit(const std::vector<PropagatorElement>& samples, DecayModel model) {
    const std::size_t n = samples.size();
    if (n < 8) throw CheckFailure("decay_fit: need at least 8 samples");
    double t_min = samples[0].t, t_max = samples[0].t;
    for (const auto& s : samples) {
        if (!(s.t > 1.0)) throw CheckFailure("decay_fit: sample times must exceed 1");
        if (!(std::abs(s.value) > 0.0)) throw CheckFailure("decay_fit: vanishing sample");
        t_min = std::min(t_min, s.t);
        t_max = std::max(t_max, s.t);
    }
    if (std::log10(t_max / t_min) < 1.5 - 1e-12) throw CheckFailure("decay_fit: samples span less than 1.5 decades");

    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(samples[i].t);
        y[i] = std::log(std::abs(samples[i].value));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw CheckFailure("decay_fit: degenerate t-grid");
    const double slope = sxy / sxx;
    double res_pow = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (my + slope * (x[i] - mx));
        res_pow += r * r;
    }
    // Power-log: log|v| = c - log t - 2 log log t.
    std::vector<double> z(n);
    double mz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = y[i] + x[i] + 2.0 * std::log(x[i]);
        mz += z[i] / n;
    }
    double res_log = 0.0;
    for (std::size_t i = 0; i < n; ++i) res_log += (z[i] - mz) * (z[i] - mz);

    DecayFit out;
    out.t_min = t_min;
    out.t_max = t_max;
    out.residual_power = std::sqrt(res_pow / n);
    out.residual_power_log = std::sqrt(res_log / n);
    out.residual_ratio = out.residual_power > 0.0 ? out.residual_power_log / out.residual_power
                                                  : std::numeric_limits<double>::infinity();
    out.model = model;
    if (model == DecayModel::Best)
        out.model = out.residual_power_log < out.residual_power ? DecayModel::PowerLog : DecayModel::Power;

    const bool power = out.model == DecayModel::Power;
    out.exponent = power ? -slope : 1.0;
    const double res = power ? res_pow : res_log;
    out.r_squared = syy > 0.0 ? 1.0 - res / syy : 1.0;
    cplx num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double shape = power ? std::pow(samples[i].t, -out.exponent) : 1.0 / (samples[i].t * x[i] * x[i]);
        num += samples[i].value * shape;
        den += shape * shape;
    }
    out.coefficient = num / den;
    return out;
}

FourierCheck fourier_check(double nu, double t) {
    if (!(nu > 0.0 && nu <= 0.5)) throw DomainError("fourier_check: nu must lie in (0, 1/2]");
    if (!(t >= 10.0) || !std::isfinite(t)) throw DomainError("fourier_check: t must be >= 10");
    const double eps = 1e-10 / t;
    auto F = [nu](double x) { return std::pow(x, nu); };
    auto transform = [&](double ca, double cb) {
        const cplx low = low_power_piece(nu, eps, t);
        const cplx lowc = low_power_piece(nu, eps, -t);
        const cplx pos = half_line_transform(F, t, eps, ca, cb, low);
        const cplx neg = half_line_transform(F, -t, eps, ca, cb, lowc);
        return (pos + std::exp(kI * (kPi * nu)) * neg) / (2.0 * kPi * kI);
    };
    FourierCheck out;
    out.t = t;
    out.numeric = transform(0.1, 0.45);
    out.cutoff_estimate = std::abs(out.numeric - transform(0.2, 0.49));
    out.closed_form = kI * std::sin(kPi * nu) / kPi * std::exp(kI * (0.5 * kPi * nu)) * specfun::gamma(1.0 + nu) *
                      std::pow(t, -1.0 - nu);
    out.oracle = out.closed_form;
    out.modulus_ratio = std::abs(out.numeric) / std::abs(out.closed_form);
    out.phase_diff = std::arg(out.numeric / out.closed_form);
    out.oracle_rel_diff = std::abs(out.numeric - out.oracle) / std::abs(out.oracle);
    return out;
}

FourierCheck fourier_log_check(int k, double t) {
    if (k != 1 && k != 2) throw DomainError("fourier_log_check: k must be 1 or 2");
    if (!(t >= 10.0) || !std::isfinite(t)) throw DomainError("fourier_log_check: t must be >= 10");
    const double eps = 1e-12 / t;
    // (log(lambda + i0))^{-k} on lambda > 0, and on lambda < 0 written at |lambda|.
    auto Fpos = [k](double x) { return std::pow(cplx(std::log(x), 0.0), -k); };
    auto Fneg = [k](double x) { return std::pow(cplx(std::log(x), kPi), -k); };
    auto transform = [&](double ca, double cb) {
        // On [0, eps] the integrand is (log x)^{-k} up to phase e^{-i t x} = 1 + O(1e-12).
        const double le = std::log(eps);
        auto low_int = [&](cplx shift) {
            auto g = [&](double y) { return eps * std::exp(-y) * std::pow(cplx(le - y) + shift, -k); };
            const auto re = quad::integrate_to_infinity([&](double y) { return std::real(g(y)); }, 0.0);
            const auto im = quad::integrate_to_infinity([&](double y) { return std::imag(g(y)); }, 0.0);
            return cplx(re.value, im.value);
        };
        const cplx pos = half_line_transform(Fpos, t, eps, ca, cb, low_int(0.0));
        const cplx neg = half_line_transform(Fneg, -t, eps, ca, cb, low_int(cplx(0.0, kPi)));
        return (pos + neg) / (2.0 * kPi * kI);
    };
    FourierCheck out;
    out.t = t;
    out.numeric = transform(0.1, 0.45);
    out.cutoff_estimate = std::abs(out.numeric - transform(0.2, 0.49));
    const double L = std::log(t);
    out.closed_form = kI * ((k % 2) ? -1.0 : 1.0) * static_cast<double>(k) / t * std::pow(L, -k - 1.0);
    // Rotated contours lambda = -i x / t (lambda > 0) and lambda = -i x / t (lambda < 0 reflected).
    auto rotated = [&](double u) {
        const double lx = std::log(u) - L;
        return -kI * std::pow(cplx(lx, -0.5 * kPi), -k) + kI * std::pow(cplx(lx, 1.5 * kPi), -k);
    };
    quad::AdaptiveOptions ao;
    ao.abs_tol = 1e-14;
    ao.rel_tol = 1e-11;
    const auto re = quad::integrate_to_infinity([&](double u) { return std::exp(-u) * std::real(rotated(u)); }, 0.0, ao);
    const auto im = quad::integrate_to_infinity([&](double u) { return std::exp(-u) * std::imag(rotated(u)); }, 0.0, ao);
    out.oracle = cplx(re.value, im.value) / (2.0 * kPi * kI * t);
    out.modulus_ratio = std::abs(out.numeric) / std::abs(out.closed_form);
    out.phase_diff = std::arg(out.numeric / out.closed_form);
    out.oracle_rel_diff = std::abs(out.numeric - out.oracle) / std::abs(out.oracle);
    return out;
}

cplx g1_element(double alpha, const TestState& f, const TestState& g) {
    const auto fp = refop::flux_params(alpha);
    if (fp.integer_flux || fp.tie() || !(fp.mu < 0.5))
        throw UnsupportedRegime("g1_element: requires non-integer flux with mu < 1/2");
    if (f.m != fp.k_star || g.m != fp.k_star) return 0.0;
    const auto& rr = radial_rule();
    const auto fr = weighted_state(f);
    const auto gr = weighted_state(g);
    // g1(r, r') = c h(r) h(r'), so the element factorises through g1(r, 1) / sqrt(g1(1, 1)).
    const cplx c11 = refop::threshold_g1(fp, 1.0, 1.0);
    cplx hf = 0.0, hg = 0.0;
    for (std::size_t i = 0; i < rr.r.size(); ++i) {
        const cplx h = refop::threshold_g1(fp, rr.r[i], 1.0);
        hf += rr.w[i] * fr[i] * h;
        hg += rr.w[i] * gr[i] * h;
    }
    return hf * hg / c11;
}

PrefactorCheck prefactor_check(double alpha, const TestState& f, const TestState& g, double t_min, double t_max,
                               int points, const PropagatorOptions& opt) {
    const auto fp = refop::flux_params(alpha);
    if (fp.integer_flux || fp.tie() || !(fp.mu < 0.5))
        throw UnsupportedRegime("prefactor_check: requires non-integer flux with mu < 1/2");
    if (points < 8) throw CheckFailure("prefactor_check: need at least 8 samples");
    const double mu = fp.mu;
    PrefactorCheck out;
    out.alpha = alpha;
    out.mu = mu;
    out.g1_element = g1_element(alpha, f, g);
    out.predicted = kI / kPi * std::sin(kPi * mu) * std::exp(kI * (0.5 * kPi * mu)) * specfun::gamma(1.0 + mu) *
                    out.g1_element;
    const auto samples = Propagator(alpha, f, g, opt).elements(t_min, t_max, points);
    Eigen::MatrixXcd M(points, 3);
    Eigen::VectorXcd b(points);
    for (int i = 0; i < points; ++i) {
        const double t = samples[i].t;
        M(i, 0) = 1.0;
        M(i, 1) = std::pow(t, -mu);
        M(i, 2) = std::pow(t, -1.0 + mu);
        b(i) = samples[i].value * std::pow(t, 1.0 + mu);
    }
    const Eigen::VectorXcd c = M.colPivHouseholderQr().solve(b);
    out.fitted = c(0);
    if (std::abs(out.predicted) == 0.0) throw CheckFailure("prefactor_check: <f, G1 g> vanishes for these states");
    out.ratio = out.fitted / out.predicted;
    out.modulus_error = std::abs(std::abs(out.ratio) - 1.0);
    out.phase_error = std::abs(std::arg(out.ratio));
    return out;
}

}  // namespace magres::timedecay
