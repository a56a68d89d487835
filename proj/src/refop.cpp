/**
 * @file refop.cpp
 * @brief Closed-form channel kernels of the reference operator.
 */
#include "magres/refop.hpp"

#include <cmath>
#include <numbers>

#include "magres/error.hpp"
#include "magres/specfun.hpp"

namespace magres::refop {

namespace {

constexpr double kPi = std::numbers::pi;
using cld = std::complex<long double>;

struct KummerSolution {
    cplx f, df;
    double err;
};

// e^{-z/2} z^p M(a, b, z) with z = 2 kappa r, and its r-derivative.
KummerSolution kummer_v(cplx a, int p, cplx kappa, double r) {
    const double b = 1.0 + 2.0 * p;
    const cplx z = 2.0 * kappa * r;
    const auto m = specfun::kummer_m(a, b, z);
    const auto dm = specfun::kummer_m_derivative(a, b, z);
    const cplx pre = std::exp(-0.5 * z) * std::pow(z, p);
    const cplx f = pre * m.value;
    const cplx dfdz = pre * ((-0.5 + static_cast<double>(p) / z) * m.value + dm.value);
    const double err = std::abs(pre) * (m.abs_err + std::abs(static_cast<double>(p) / z) * m.abs_err + dm.abs_err);
    return {f, 2.0 * kappa * dfdz, err};
}

// e^{-z/2} z^p U(a, b, z) with z = 2 kappa r, kappa > 0, a > 0.
KummerSolution kummer_u_solution(double a, int p, double kappa, double r) {
    const double b = 1.0 + 2.0 * p;
    const double z = 2.0 * kappa * r;
    const auto u = specfun::kummer_u(a, b, z);
    const auto du = specfun::kummer_u_derivative(a, b, z);
    const double pre = std::exp(-0.5 * z) * std::pow(z, p);
    const double f = pre * u.real();
    const double dfdz = pre * ((-0.5 + p / z) * u.real() + du.real());
    const double err = pre * (u.abs_err * (1.0 + std::abs(p / z)) + du.abs_err);
    return {f, 2.0 * kappa * dfdz, err};
}

}  // namespace

FluxParams flux_params(double alpha) {
    if (!std::isfinite(alpha) || std::abs(alpha) > 50.0) throw DomainError("flux_params: |alpha| must be <= 50");
    FluxParams fp;
    fp.alpha = alpha;
    const double fl = std::floor(alpha);
    const double frac = alpha - fl;
    constexpr double tol = 1e-13;
    if (frac < tol || frac > 1.0 - tol) {
        const double n = std::round(alpha);
        fp.mu = 0.0;
        fp.k_star = -static_cast<int>(n);
        fp.integer_flux = true;
    } else if (std::abs(frac - 0.5) < tol) {
        fp.mu = 0.5;
        fp.k_star = -static_cast<int>(fl);
        fp.k_star_alt = -static_cast<int>(fl) - 1;
    } else if (frac < 0.5) {
        fp.mu = frac;
        fp.k_star = -static_cast<int>(fl);
    } else {
        fp.mu = 1.0 - frac;
        fp.k_star = -static_cast<int>(fl) - 1;
    }
    return fp;
}

SpectralPoint spectral_point(double alpha, double lambda, Side side) {
    if (!std::isfinite(lambda) || lambda == 0.0) throw DomainError("spectral_point: lambda must be finite and nonzero");
    return {lambda, side, std::sqrt(cplx(alpha * alpha - lambda, 0.0))};
}

cplx kummer_a(double alpha, int m, cplx kappa) {
    if (kappa == 0.0) throw DomainError("kummer_a: kappa = 0");
    return 0.5 + std::abs(m) + static_cast<double>(m) * alpha / kappa;
}

InteriorValues interior_solutions(double alpha, int m, const SpectralPoint& pt, double r) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("interior_solutions: r must lie in (0, 1]");
    if (pt.kappa == 0.0) throw DomainError("interior_solutions: kappa = 0");
    const int p = std::abs(m);
    const cplx a = kummer_a(alpha, m, pt.kappa);
    const auto v = kummer_v(a, p, pt.kappa, r);
    if (pt.kappa.imag() != 0.0 || !(pt.kappa.real() > 0.0) || !(a.real() > 0.0))
        throw UnsupportedRegime("interior_solutions: U solution needs real kappa > 0 and a > 0");
    const auto u = kummer_u_solution(a.real(), p, pt.kappa.real(), r);
    return {v.f, v.df, u.f, u.df, v.err + u.err};
}

ChannelResolvent::ChannelResolvent(double alpha, int m, double lambda, Side side)
    : alpha_(alpha), m_(m), nu_(std::abs(m + alpha)), pt_(spectral_point(alpha, lambda, side)) {
    negative_ = lambda < 0.0;
    k_ = std::sqrt(std::abs(lambda));
    const cplx kappa = pt_.kappa;
    use_kummer_v_ = std::abs(kappa) > 0.0;
    a_ = use_kummer_v_ ? kummer_a(alpha, m, kappa) : cplx(0.0);
    use_u_ = kappa.imag() == 0.0 && kappa.real() > 0.0 && a_.real() >= 0.1;

    // Frobenius coefficients of y1 = r^p sum c_n r^n and of the second solution
    // y2 = L y1 log r + r^{-p} sum d_n r^n for the equation
    // r^2 f'' + r f' - (p^2 + beta r + kappa^2 r^2) f = 0.
    if (!use_kummer_v_ || !use_u_) {
        const int p = std::abs(m);
        const cld beta = 2.0L * m * alpha;
        const cld k2(kappa.real() * kappa.real() - kappa.imag() * kappa.imag(), 2.0 * kappa.real() * kappa.imag());
        const int n_min = static_cast<int>(2.0 * (std::abs(beta) + std::sqrt(std::abs(k2)))) + 2 * p + 6;
        const int n_max = 4000;
        c_.assign(1, 1.0L);
        long double scale = 1.0L;
        for (int n = 1; n < n_max; ++n) {
            cld cn = beta * c_[n - 1];
            if (n >= 2) cn += k2 * c_[n - 2];
            cn /= static_cast<long double>(n) * (n + 2 * p);
            c_.push_back(cn);
            scale = std::max(scale, std::abs(cn));
            if (n > n_min && std::abs(cn) + std::abs(c_[n - 1]) < 1e-21L * scale) break;
        }
        if (static_cast<int>(c_.size()) >= n_max) throw ConvergenceError("ChannelResolvent: Frobenius series");
        const int n_terms = static_cast<int>(c_.size());
        d_.assign(n_terms + 2 * p, 0.0L);
        if (p == 0) {
            log_coef_ = 1.0L;
            d_[0] = 0.0L;
            for (int n = 1; n < static_cast<int>(d_.size()); ++n) {
                cld dn = beta * d_[n - 1];
                if (n >= 2) dn += k2 * d_[n - 2];
                if (n < n_terms) dn -= 2.0L * n * c_[n];
                d_[n] = dn / (static_cast<long double>(n) * n);
            }
        } else {
            d_[0] = 1.0L;
            log_coef_ = 0.0L;
            for (int n = 1; n < static_cast<int>(d_.size()); ++n) {
                cld rhs = beta * d_[n - 1];
                if (n >= 2) rhs += k2 * d_[n - 2];
                if (n == 2 * p) {
                    log_coef_ = rhs / (2.0L * p);
                    d_[n] = 0.0L;
                    continue;
                }
                if (n > 2 * p && n - 2 * p < n_terms) rhs -= 2.0L * log_coef_ * static_cast<long double>(n - p) * c_[n - 2 * p];
                d_[n] = rhs / (static_cast<long double>(n) * (n - 2 * p));
            }
        }
    }

    // Matching at r = 1.
    const auto in = interior_basis(1.0);
    const cplx y = in.v, yp = in.dv;
    cplx P, Pp, Q, Qp, wpq, phi, dphi;
    if (negative_) {
        const auto ik = specfun::bessel_ik(nu_, k_);
        P = ik.i;
        Pp = k_ * ik.ip;
        Q = ik.k;
        Qp = k_ * ik.kp;
        wpq = -1.0;
        phi = Q;
        dphi = Qp;
    } else {
        const auto jy = specfun::bessel_jy(nu_, k_);
        P = jy.j;
        Pp = k_ * jy.jp;
        Q = jy.y;
        Qp = k_ * jy.yp;
        wpq = 2.0 / kPi;
        phi = P + cplx(0.0, 1.0) * Q;
        dphi = Pp + cplx(0.0, 1.0) * Qp;
    }
    mc_.A = (y * Qp - yp * Q) / wpq;
    mc_.B = (P * yp - Pp * y) / wpq;
    mc_.W = yp * phi - y * dphi;
    const cplx w12 = in.v * in.du - in.dv * in.u;
    mc_.C = (phi * in.du - dphi * in.u) / w12;
    mc_.D = (in.v * dphi - in.dv * phi) / w12;
    if (!std::isfinite(std::abs(mc_.W)) || mc_.W == 0.0 || !std::isfinite(std::abs(mc_.C)) ||
        !std::isfinite(std::abs(mc_.D)))
        throw ConvergenceError("ChannelResolvent: non-finite matching data");
}

InteriorValues ChannelResolvent::interior_basis(double r) const {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("interior_basis: r must lie in (0, 1]");
    const int p = std::abs(m_);
    InteriorValues out;
    const long double rl = r;
    cld s1 = 0.0L, s1p = 0.0L;
    const bool need_frob = !use_kummer_v_ || !use_u_;
    if (need_frob) {
        for (int n = static_cast<int>(c_.size()) - 1; n >= 0; --n) {
            s1 = s1 * rl + c_[n];
            s1p = s1p * rl + c_[n] * static_cast<long double>(n + p);
        }
    }
    const cld y1 = std::pow(rl, p) * s1;
    const cld y1p = s1p * std::pow(rl, p - 1);
    if (use_kummer_v_) {
        const auto v = kummer_v(a_, p, pt_.kappa, r);
        out.v = v.f;
        out.dv = v.df;
        out.abs_err += v.err;
    } else {
        out.v = cplx(static_cast<double>(y1.real()), static_cast<double>(y1.imag()));
        out.dv = cplx(static_cast<double>(y1p.real()), static_cast<double>(y1p.imag()));
    }
    if (use_u_) {
        const auto u = kummer_u_solution(a_.real(), p, pt_.kappa.real(), r);
        out.u = u.f;
        out.du = u.df;
        out.abs_err += u.err;
    } else {
        cld s2 = 0.0L, s2p = 0.0L;
        for (int n = static_cast<int>(d_.size()) - 1; n >= 0; --n) {
            s2 = s2 * rl + d_[n];
            s2p = s2p * rl + d_[n] * static_cast<long double>(n - p);
        }
        const long double lr = std::log(rl);
        const long double rmp = std::pow(rl, -p);
        const cld y2 = log_coef_ * y1 * lr + rmp * s2;
        const cld y2p = log_coef_ * (y1p * lr + y1 / rl) + s2p * rmp / rl;
        out.u = cplx(static_cast<double>(y2.real()), static_cast<double>(y2.imag()));
        out.du = cplx(static_cast<double>(y2p.real()), static_cast<double>(y2p.imag()));
    }
    return out;
}

SolutionPair ChannelResolvent::plus_side(double r) const {
    if (!(r > 0.0)) throw DomainError("ChannelResolvent: r must be positive");
    SolutionPair s;
    if (r <= 1.0) {
        const auto in = interior_basis(r);
        s.f = in.v;
        s.df = in.dv;
        s.phi = mc_.C * in.v + mc_.D * in.u;
        s.dphi = mc_.C * in.dv + mc_.D * in.du;
        return s;
    }
    const double x = k_ * r;
    if (negative_) {
        const auto ik = specfun::bessel_ik(nu_, x);
        s.f = mc_.A * ik.i + mc_.B * ik.k;
        s.df = k_ * (mc_.A * ik.ip + mc_.B * ik.kp);
        s.phi = ik.k;
        s.dphi = k_ * ik.kp;
    } else {
        const auto jy = specfun::bessel_jy(nu_, x);
        s.f = mc_.A * jy.j + mc_.B * jy.y;
        s.df = k_ * (mc_.A * jy.jp + mc_.B * jy.yp);
        s.phi = cplx(jy.j, jy.y);
        s.dphi = k_ * cplx(jy.jp, jy.yp);
    }
    return s;
}

SolutionPair ChannelResolvent::solutions(double r) const {
    auto s = plus_side(r);
    if (pt_.side == Side::Minus) {
        s.f = std::conj(s.f);
        s.df = std::conj(s.df);
        s.phi = std::conj(s.phi);
        s.dphi = std::conj(s.dphi);
    }
    return s;
}

cplx ChannelResolvent::kernel(double r, double rp) const {
    const double lo = std::min(r, rp), hi = std::max(r, rp);
    const cplx val = plus_side(lo).f * plus_side(hi).phi / mc_.W;
    return pt_.side == Side::Minus ? std::conj(val) : val;
}

std::vector<cplx> ChannelResolvent::kernel_matrix(const std::vector<double>& r) const {
    const std::size_t n = r.size();
    std::vector<cplx> f(n), phi(n), out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = plus_side(r[i]);
        f[i] = s.f / mc_.W;
        phi[i] = s.phi;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const bool lower = r[i] <= r[j];
            cplx v = lower ? f[i] * phi[j] : f[j] * phi[i];
            if (pt_.side == Side::Minus) v = std::conj(v);
            out[i * n + j] = v;
        }
    }
    return out;
}

MatchingCoefficients matching_coefficients(double alpha, int m, double lambda, Side side) {
    ChannelResolvent ch(alpha, m, lambda, Side::Plus);
    auto mc = ch.matching();
    if (side == Side::Minus) {
        mc.A = std::conj(mc.A);
        mc.B = std::conj(mc.B);
        mc.C = std::conj(mc.C);
        mc.D = std::conj(mc.D);
        mc.W = std::conj(mc.W);
    }
    return mc;
}

cplx channel_kernel(double alpha, int m, double lambda, Side side, double r, double rp) {
    return ChannelResolvent(alpha, m, lambda, side).kernel(r, rp);
}

FullKernelValue full_kernel(double alpha, double lambda, Side side, const double x[2], const double y[2], int m_max,
                            double tail_tol) {
    const double r = std::hypot(x[0], x[1]), rp = std::hypot(y[0], y[1]);
    if (!(r > 0.0 && rp > 0.0)) throw DomainError("full_kernel: points must differ from the origin");
    if (x[0] == y[0] && x[1] == y[1]) throw DomainError("full_kernel: x = y");
    const auto fp = flux_params(alpha);
    if (m_max < std::abs(fp.k_star) + 5) throw DomainError("full_kernel: m_max too small");
    const double dth = std::atan2(x[1], x[0]) - std::atan2(y[1], y[0]);
    cplx sum = 0.0;
    for (int m = -m_max; m <= m_max; ++m) {
        const cplx rm = channel_kernel(alpha, m, lambda, side, r, rp);
        sum += rm * std::exp(cplx(0.0, -m * dth));
    }
    // Envelope (r_</r_>)^nu / (2 nu) of the channel kernels beyond m_max.
    const double q = std::min(r, rp) / std::max(r, rp);
    double tail = 0.0;
    if (q >= 1.0) {
        tail = HUGE_VAL;
    } else {
        for (int m = m_max + 1; m < m_max + 100000; ++m) {
            const double t1 = std::pow(q, std::abs(m + alpha)) / (2.0 * std::abs(m + alpha));
            const double t2 = std::pow(q, std::abs(-m + alpha)) / (2.0 * std::abs(-m + alpha));
            tail += t1 + t2;
            if (t1 + t2 < 1e-18 * tail) break;
        }
        tail /= 2.0 * kPi;
    }
    if (tail > tail_tol) throw ConvergenceError("full_kernel: channel tail bound above tolerance");
    return {sum / (2.0 * kPi), tail};
}

ThresholdChannel::ThresholdChannel(double alpha, int m) : alpha_(alpha) {
    if (alpha == 0.0) throw DomainError("ThresholdChannel: alpha must be nonzero");
    const int p = std::abs(m);
    const double kappa = std::abs(alpha);
    tc_.m = m;
    tc_.nu = std::abs(m + alpha);
    tc_.kummer_a = 0.5 + p + m * (alpha > 0 ? 1.0 : -1.0);
    tc_.kummer_b = 1.0 + 2.0 * p;
    const auto v = kummer_v(tc_.kummer_a, p, kappa, 1.0);
    const auto u = kummer_u_solution(tc_.kummer_a, p, kappa, 1.0);
    tc_.a = v.f.real();
    tc_.ap = v.df.real();
    tc_.b = u.f.real();
    tc_.bp = u.df.real();
    tc_.omega = std::exp(specfun::log_gamma(tc_.kummer_b) - specfun::log_gamma(tc_.kummer_a));
}

double ThresholdChannel::v(double r) const {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("ThresholdChannel::v: r must lie in (0, 1]");
    return kummer_v(tc_.kummer_a, std::abs(tc_.m), std::abs(alpha_), r).f.real();
}

double ThresholdChannel::u(double r) const {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("ThresholdChannel::u: r must lie in (0, 1]");
    return kummer_u_solution(tc_.kummer_a, std::abs(tc_.m), std::abs(alpha_), r).f.real();
}

namespace {

// G_{m,0} from precomputed v, u values at the smaller/larger radius.
double g0_from(const ThresholdConstants& c, double r, double rp, double vr, double vrp, double urp) {
    const double nu = c.nu;
    if (nu == 0.0) {
        if (rp <= 1.0) return vr * (urp - (c.bp / c.ap) * vrp) / c.omega;
        if (r <= 1.0) return vr / c.ap;
        return c.a / c.ap + std::log(r);
    }
    const double den = c.ap + nu * c.a;
    if (rp <= 1.0) return vr * (urp - ((c.bp + nu * c.b) / den) * vrp) / c.omega;
    if (r <= 1.0) return vr * std::pow(rp, -nu) / den;
    const double rho = (c.ap - nu * c.a) / den;
    return (std::pow(r / rp, nu) - rho * std::pow(r * rp, -nu)) / (2.0 * nu);
}

}  // namespace

double ThresholdChannel::g0(double r, double rp) const {
    if (!(r > 0.0 && rp > 0.0)) throw DomainError("threshold_g0: radii must be positive");
    const double lo = std::min(r, rp), hi = std::max(r, rp);
    const double vr = lo <= 1.0 ? v(lo) : 0.0;
    const double vrp = hi <= 1.0 ? v(hi) : 0.0;
    const double urp = hi <= 1.0 ? u(hi) : 0.0;
    return g0_from(tc_, lo, hi, vr, vrp, urp);
}

std::vector<double> ThresholdChannel::g0_matrix(const std::vector<double>& r) const {
    const std::size_t n = r.size();
    std::vector<double> vv(n, 0.0), uu(n, 0.0), out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (r[i] <= 1.0) {
            vv[i] = v(r[i]);
            uu[i] = u(r[i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t lo = r[i] <= r[j] ? i : j, hi = r[i] <= r[j] ? j : i;
            out[i * n + j] = g0_from(tc_, r[lo], r[hi], vv[lo], vv[hi], uu[hi]);
        }
    }
    return out;
}

ThresholdConstants threshold_constants(double alpha, int m) { return ThresholdChannel(alpha, m).constants(); }

double threshold_g0(double alpha, int m, double r, double rp) { return ThresholdChannel(alpha, m).g0(r, rp); }

cplx g1_prefactor(double mu) {
    if (!(mu > 0.0 && mu < 0.5)) throw UnsupportedRegime("g1_prefactor: requires 0 < mu < 1/2");
    const double g = specfun::gamma(mu);
    return kPi * cplx(-1.0 / std::tan(mu * kPi), 1.0) / (std::pow(4.0, mu) * g * g);
}

cplx threshold_g1(const FluxParams& fp, double r, double rp) {
    if (fp.integer_flux || fp.tie() || !(fp.mu < 0.5))
        throw UnsupportedRegime("threshold_g1: requires non-integer flux with mu < 1/2");
    if (!(r > 0.0 && rp > 0.0)) throw DomainError("threshold_g1: radii must be positive");
    const ThresholdChannel ch(fp.alpha, fp.k_star);
    const auto& c = ch.constants();
    const double mu = fp.mu;
    const cplx pref = g1_prefactor(mu);
    const double den = c.ap + mu * c.a;
    const double rho = (c.ap - mu * c.a) / den;
    const double lo = std::min(r, rp), hi = std::max(r, rp);
    auto outer = [&](double s) { return std::pow(s, mu) - rho * std::pow(s, -mu); };
    if (hi <= 1.0) return 2.0 * pref * ch.v(lo) * ch.v(hi) / (den * den);
    if (lo <= 1.0) return pref * ch.v(lo) * outer(hi) / (mu * den);
    return pref * outer(lo) * outer(hi) / (2.0 * mu * mu);
}

IntegerThreshold threshold_integer(int alpha, double r, double rp) {
    if (alpha == 0) throw DomainError("threshold_integer: alpha must be a nonzero integer");
    if (!(r > 0.0 && rp > 0.0)) throw DomainError("threshold_integer: radii must be positive");
    const ThresholdChannel ch(alpha, -alpha);
    const auto& c = ch.constants();
    const double lo = std::min(r, rp), hi = std::max(r, rp);
    IntegerThreshold out{ch.g0(lo, hi), 0.0};
    const double q = c.a / c.ap;
    if (hi <= 1.0)
        out.k1 = 2.0 * ch.v(lo) * ch.v(hi) / (c.ap * c.ap);
    else if (lo <= 1.0)
        out.k1 = 2.0 * ch.v(lo) / c.ap * (q + std::log(hi));
    else
        out.k1 = 2.0 * (q + std::log(lo)) * (q + std::log(hi));
    return out;
}

cplx lambda_power(double lambda, double mu, Side side) {
    cplx v = lambda > 0.0 ? cplx(std::pow(lambda, mu), 0.0) : std::pow(-lambda, mu) * std::exp(cplx(0.0, kPi * mu));
    return side == Side::Minus ? std::conj(v) : v;
}

cplx lambda_log(double lambda, Side side) {
    cplx v = lambda > 0.0 ? cplx(std::log(lambda), 0.0) : cplx(std::log(-lambda), kPi);
    return side == Side::Minus ? std::conj(v) : v;
}

cplx remainder_kernel(double alpha, int m, double lambda, Side side, double r, double rp) {
    const auto fp = flux_params(alpha);
    if (fp.tie()) throw UnsupportedRegime("remainder_kernel: mu = 1/2 has no explicit g1");
    cplx val = channel_kernel(alpha, m, lambda, side, r, rp) - threshold_g0(alpha, m, r, rp);
    if (!fp.integer_flux) {
        if (m == fp.k_star) val -= lambda_power(lambda, fp.mu, side) * threshold_g1(fp, r, rp);
    } else if (m == -static_cast<int>(std::lround(alpha))) {
        val -= threshold_integer(static_cast<int>(std::lround(alpha)), r, rp).k1 / lambda_log(lambda, side);
    }
    return val;
}

}  // namespace magres::refop
