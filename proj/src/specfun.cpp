/**
 * @file specfun.cpp
 * @brief Special-function evaluators.
 */
#include "magres/specfun.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "magres/error.hpp"
#include "magres/quadrature.hpp"

namespace magres::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-16;
constexpr double kFpMin = DBL_MIN / kEps;
constexpr int kMaxIt = 100000;

// Lanczos approximation, g = 7, nine terms.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
    // x >= 0.5
    const double xm = x - 1.0;
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (xm + i);
    const double t = xm + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (xm + 0.5) * std::log(t) - t + std::log(a);
}

// Taylor coefficients of 1/Gamma(z) = sum c_k z^k, k = 1..26.
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001};

// Temme's auxiliary quantities for |mu| <= 1/2:
// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2,
// gampl = 1/G(1+mu), gammi = 1/G(1-mu).
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    // 1/G(1+x) = sum_{j>=0} c_{j+1} x^j.
    double even = 0.0, odd = 0.0;
    const double mu2 = mu * mu;
    double pw = 1.0;
    for (int j = 0; j < 26; j += 2) {
        even += kRecipGamma[j] * pw;
        if (j + 1 < 26) odd += kRecipGamma[j + 1] * pw;
        pw *= mu2;
    }
    gam2 = even;
    gam1 = -odd;
    gampl = even + mu * odd;
    gammi = even - mu * odd;
}

void check_order(double nu) {
    if (!std::isfinite(nu) || std::abs(nu) > kMaxOrder)
        throw DomainError("bessel: order out of range");
}

}  // namespace

double gamma_unchecked(double x) {
    if (!(x > 0.0)) throw DomainError("gamma: argument must be positive");
    if (x < 0.5) return gamma_unchecked(x + 1.0) / x;
    if (x >= 171.0) throw DomainError("gamma: overflow");
    return std::exp(lanczos_log_gamma(x));
}

double gamma(double x) {
    if (!(x > 0.0) || x > 60.0) throw DomainError("gamma: argument outside (0, 60]");
    // Integer arguments are returned exactly.
    if (x == std::floor(x)) {
        double f = 1.0;
        for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
        return f;
    }
    return gamma_unchecked(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    return lanczos_log_gamma(x);
}

double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    if (x >= 0.5) {
        if (x >= 171.0) return std::exp(-log_gamma(x));
        return 1.0 / gamma_unchecked(x);
    }
    // Reflection: 1/G(x) = sin(pi x) G(1-x) / pi.
    return std::sin(kPi * x) * gamma_unchecked(1.0 - x) / kPi;
}

BesselJY bessel_jy(double xnu, double x) {
    if (!(x > 0.0) || xnu < 0.0) throw DomainError("bessel_jy: requires x > 0, nu >= 0");
    const double xmin = 2.0;
    const int nl = (x < xmin ? static_cast<int>(xnu + 0.5) : std::max(0, static_cast<int>(xnu - x + 1.5)));
    const double xmu = xnu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x, xi2 = 2.0 * xi, w = xi2 / kPi;
    int isign = 1;
    double h = xnu * xi;
    if (h < kFpMin) h = kFpMin;
    double b = xi2 * xnu, d = 0.0, c = h;
    int i = 0;
    for (; i < kMaxIt; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b - 1.0 / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = c * d;
        h = del * h;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= kEps) break;
    }
    if (i >= kMaxIt) throw ConvergenceError("bessel_jy: continued fraction CF1 failed");
    double rjl = isign * kFpMin, rjpl = h * rjl;
    const double rjl1 = rjl, rjp1 = rjpl;
    double fact = xnu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = kEps;
    const double f = rjpl / rjl;
    double rjmu, rymu, rymup, ry1;
    if (x < xmin) {
        const double x2 = 0.5 * x, pimu = kPi * xmu;
        fact = (std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu));
        d = -std::log(x2);
        double e = xmu * d;
        const double fact2 = (std::abs(e) < kEps ? 1.0 : std::sinh(e) / e);
        double gam1, gam2, gampl, gammi;
        temme_gammas(xmu, gam1, gam2, gampl, gammi);
        double ff = 2.0 / kPi * fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
        e = std::exp(e);
        double p = e / (gampl * kPi);
        double q = 1.0 / (e * kPi * gammi);
        const double pimu2 = 0.5 * pimu;
        const double fact3 = (std::abs(pimu2) < kEps ? 1.0 : std::sin(pimu2) / pimu2);
        const double r = kPi * pimu2 * fact3 * fact3;
        c = 1.0;
        d = -x2 * x2;
        double sum = ff + r * q, sum1 = p;
        for (i = 1; i < kMaxIt; ++i) {
            ff = (i * ff + p + q) / (i * i - xmu2);
            c *= (d / i);
            p /= (i - xmu);
            q /= (i + xmu);
            const double del = c * (ff + r * q);
            sum += del;
            const double del1 = c * p - i * del;
            sum1 += del1;
            if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
        }
        if (i >= kMaxIt) throw ConvergenceError("bessel_jy: Temme series failed");
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        double a = 0.25 - xmu2, p = -0.5 * xi, q = 1.0;
        const double br = 2.0 * x;
        double bi = 2.0;
        fact = a * xi / (p * p + q * q);
        double cr = br + q * fact, ci = bi + p * fact;
        double den = br * br + bi * bi;
        double dr = br / den, di = -bi / den;
        double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for (i = 1; i < kMaxIt; ++i) {
            a += 2 * i;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < kFpMin) dr = kFpMin;
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if (std::abs(cr) + std::abs(ci) < kFpMin) cr = kFpMin;
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) <= kEps) break;
        }
        if (i >= kMaxIt) throw ConvergenceError("bessel_jy: continued fraction CF2 failed");
        const double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    fact = rjmu / rjl;
    BesselJY out{};
    out.j = rjl1 * fact;
    out.jp = rjp1 * fact;
    for (i = 1; i <= nl; ++i) {
        const double rytemp = (xmu + i) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    out.y = rymu;
    out.yp = xnu * xi * rymu - ry1;
    return out;
}

BesselIK bessel_ik(double xnu, double x) {
    if (!(x > 0.0) || xnu < 0.0) throw DomainError("bessel_ik: requires x > 0, nu >= 0");
    const double xmin = 2.0;
    const int nl = static_cast<int>(xnu + 0.5);
    const double xmu = xnu - nl, xmu2 = xmu * xmu;
    const double xi = 1.0 / x, xi2 = 2.0 * xi;
    double h = xnu * xi;
    if (h < kFpMin) h = kFpMin;
    double b = xi2 * xnu, d = 0.0, c = h;
    int i = 0;
    for (; i < kMaxIt; ++i) {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        const double del = c * d;
        h = del * h;
        if (std::abs(del - 1.0) < kEps) break;
    }
    if (i >= kMaxIt) throw ConvergenceError("bessel_ik: continued fraction CF1 failed");
    double ril = kFpMin, ripl = h * ril;
    const double ril1 = ril, rip1 = ripl;
    double fact = xnu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    const double f = ripl / ril;
    double rkmu, rk1;
    if (x < xmin) {
        const double x2 = 0.5 * x, pimu = kPi * xmu;
        fact = (std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu));
        d = -std::log(x2);
        double e = xmu * d;
        const double fact2 = (std::abs(e) < kEps ? 1.0 : std::sinh(e) / e);
        double gam1, gam2, gampl, gammi;
        temme_gammas(xmu, gam1, gam2, gampl, gammi);
        double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / gampl;
        double q = 0.5 / (e * gammi);
        c = 1.0;
        d = x2 * x2;
        double sum1 = p;
        for (i = 1; i < kMaxIt; ++i) {
            ff = (i * ff + p + q) / (i * i - xmu2);
            c *= (d / i);
            p /= (i - xmu);
            q /= (i + xmu);
            const double del = c * ff;
            sum += del;
            const double del1 = c * (p - i * ff);
            sum1 += del1;
            if (std::abs(del) < std::abs(sum) * kEps) break;
        }
        if (i >= kMaxIt) throw ConvergenceError("bessel_ik: Temme series failed");
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        b = 2.0 * (1.0 + x);
        d = 1.0 / b;
        h = d;
        double delh = d, q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - xmu2;
        double q = a1;
        c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        for (i = 1; i < kMaxIt; ++i) {
            a -= 2 * i;
            c = -a * c / (i + 1.0);
            const double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < kEps) break;
        }
        if (i >= kMaxIt) throw ConvergenceError("bessel_ik: continued fraction CF2 failed");
        h = a1 * h;
        rkmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    const double rkmup = xmu * xi * rkmu - rk1;
    const double rimu = xi / (f * rkmu - rkmup);
    BesselIK out{};
    out.i = (rimu * ril1) / ril;
    out.ip = (rimu * rip1) / ril;
    for (i = 1; i <= nl; ++i) {
        const double rktemp = (xmu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    out.k = rkmu;
    out.kp = xnu * xi * rkmu - rk1;
    return out;
}

SpecialValue bessel_j_series(double nu, double z) {
    if (nu < 0.0 && nu == std::floor(nu)) throw DomainError("bessel_j_series: negative integer order");
    if (!(z >= 0.0)) throw DomainError("bessel_j_series: z must be non-negative");
    if (z == 0.0) return {nu == 0.0 ? 1.0 : (nu > 0.0 ? 0.0 : HUGE_VAL), 0.0};
    const long double q = -0.25L * static_cast<long double>(z) * z;
    long double term = rgamma(nu + 1.0);
    long double sum = term, abs_sum = std::abs(term);
    int k = 1;
    for (; k < 10000; ++k) {
        term *= q / (static_cast<long double>(k) * (nu + k));
        sum += term;
        abs_sum += std::abs(term);
        if (k > z && std::abs(term) <= 1e-19L * std::abs(sum)) break;
    }
    if (k >= 10000) throw ConvergenceError("bessel_j_series: no convergence");
    const double pref = std::pow(0.5 * z, nu);
    const double val = static_cast<double>(sum) * pref;
    const double err = (4e-19 * static_cast<double>(abs_sum) + 2e-16 * std::abs(static_cast<double>(sum))) * pref;
    return {val, err};
}

SpecialValue bessel(BesselKind kind, double nu, double z) {
    check_order(nu);
    if (!(z > 0.0)) throw DomainError("bessel: argument must be positive");
    if ((kind == BesselKind::Y || kind == BesselKind::K || kind == BesselKind::I) && nu < 0.0)
        throw DomainError("bessel: Y, I and K require nu >= 0");
    const double slack = 1e-15 * (8.0 + std::abs(nu) + z);
    switch (kind) {
        case BesselKind::J: {
            if (nu < 0.0) {
                if (nu == std::floor(nu)) {
                    const int n = static_cast<int>(-nu);
                    const auto v = bessel_jy(-nu, z);
                    const double s = (n % 2) ? -1.0 : 1.0;
                    return {s * v.j, slack * std::abs(v.j)};
                }
                if (z <= 12.0) return bessel_j_series(nu, z);
                const double mu = -nu;
                const auto v = bessel_jy(mu, z);
                const double val = std::cos(mu * kPi) * v.j - std::sin(mu * kPi) * v.y;
                return {val, slack * (std::abs(v.j) + std::abs(v.y))};
            }
            const auto v = bessel_jy(nu, z);
            return {v.j, slack * std::abs(v.j)};
        }
        case BesselKind::Y: {
            const auto v = bessel_jy(nu, z);
            if (!std::isfinite(v.y)) throw ConvergenceError("bessel: Y overflow");
            return {v.y, slack * std::abs(v.y)};
        }
        case BesselKind::I: {
            const auto v = bessel_ik(nu, z);
            return {v.i, slack * std::abs(v.i)};
        }
        case BesselKind::K: {
            const auto v = bessel_ik(nu, z);
            if (!std::isfinite(v.k)) throw ConvergenceError("bessel: K overflow");
            return {v.k, slack * std::abs(v.k)};
        }
    }
    throw DomainError("bessel: unknown kind");
}

SpecialValue bessel_derivative(BesselKind kind, double nu, double z) {
    check_order(nu);
    if (!(z > 0.0)) throw DomainError("bessel_derivative: argument must be positive");
    const double slack = 1e-15 * (8.0 + std::abs(nu) + z);
    switch (kind) {
        case BesselKind::J: {
            if (nu < 0.0) {
                // d/dz J_nu = J_{nu-1} - (nu/z) J_nu.
                const auto a = bessel(BesselKind::J, nu - 1.0, z);
                const auto b = bessel(BesselKind::J, nu, z);
                return {a.value - (nu / z) * b.value, a.abs_err + std::abs(nu / z) * b.abs_err};
            }
            const auto v = bessel_jy(nu, z);
            return {v.jp, slack * (std::abs(v.jp) + std::abs(v.j))};
        }
        case BesselKind::Y: {
            if (nu < 0.0) throw DomainError("bessel_derivative: Y requires nu >= 0");
            const auto v = bessel_jy(nu, z);
            return {v.yp, slack * (std::abs(v.yp) + std::abs(v.y))};
        }
        case BesselKind::I: {
            if (nu < 0.0) throw DomainError("bessel_derivative: I requires nu >= 0");
            const auto v = bessel_ik(nu, z);
            return {v.ip, slack * (std::abs(v.ip) + std::abs(v.i))};
        }
        case BesselKind::K: {
            if (nu < 0.0) throw DomainError("bessel_derivative: K requires nu >= 0");
            const auto v = bessel_ik(nu, z);
            return {v.kp, slack * (std::abs(v.kp) + std::abs(v.k))};
        }
    }
    throw DomainError("bessel_derivative: unknown kind");
}

SpecialValue bessel_y_integral(double nu, double z) {
    if (!(nu > 0.0) || !(z > 0.0)) throw DomainError("bessel_y_integral: requires nu > 0, z > 0");
    quad::AdaptiveOptions opt{1e-14, 1e-13, 4000};
    auto f1 = [&](double t) { return std::pow(1.0 - t * t, nu - 0.5) * std::sin(z * t); };
    auto f2 = [&](double t) { return std::exp(-z * t) * std::pow(1.0 + t * t, nu - 0.5); };
    const auto i1 = quad::integrate(f1, 0.0, 1.0, opt);
    const auto i2 = quad::integrate_to_infinity(f2, 0.0, opt, 1.0 / z);
    const double pref = 2.0 * std::pow(0.5 * z, nu) / (std::sqrt(kPi) * gamma_unchecked(nu + 0.5));
    return {pref * (i1.value - i2.value), std::abs(pref) * (i1.abs_err + i2.abs_err)};
}

SpecialValue kummer_m(std::complex<double> a, double b, std::complex<double> z) {
    if (!(b > 0.0)) throw DomainError("kummer_m: b must be positive");
    if (z == 0.0) return {1.0, 0.0};
    if (z.real() < 0.0) {
        // Kummer transformation keeps the series free of cancellation.
        auto t = kummer_m(std::complex<double>(b) - a, b, -z);
        const auto ez = std::exp(z);
        return {ez * t.value, std::abs(ez) * t.abs_err};
    }
    using C = std::complex<long double>;
    const C al(a.real(), a.imag()), zl(z.real(), z.imag());
    C term = 1.0L, sum = 1.0L;
    long double abs_sum = 1.0L;
    const double az = std::abs(z);
    int n = 0;
    for (; n < 10000; ++n) {
        term *= (al + static_cast<long double>(n)) * zl /
                ((static_cast<long double>(b) + n) * static_cast<long double>(n + 1));
        sum += term;
        abs_sum += std::abs(term);
        if (term == C(0.0L)) break;
        // For k > n every term ratio is bounded by (|a+n|/(n+1) + 1)|z|/(b+n).
        const double tail_ratio = (std::abs(a + static_cast<double>(n + 1)) / (n + 2.0) + 1.0) * az / (b + n + 1.0);
        if (tail_ratio < 0.5 && std::abs(term) <= 1e-20L * std::abs(sum)) break;
    }
    if (n >= 10000) throw ConvergenceError("kummer_m: series did not converge in 10000 terms");
    const std::complex<double> val(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    const double err = 2e-19 * static_cast<double>(abs_sum) * (1.0 + 0.01 * n) + 1e-17 * std::abs(val);
    return {val, err};
}

SpecialValue kummer_u_integral(double a, double b, double z) {
    if (!(a > 0.0) || !(b > 0.0) || !(z > 0.0))
        throw DomainError("kummer_u: requires a > 0, b > 0, z > 0");
    quad::AdaptiveOptions opt{0.0, 1e-13, 4000};
    const double ex = b - a - 1.0;
    // Near tau = 0 substitute tau = w^(1/a) to remove the tau^(a-1) singularity.
    auto head = [&](double w) {
        if (w <= 0.0) return a >= 1.0 ? 0.0 : std::pow(z, ex) / a;
        const double tau = std::pow(w, 1.0 / a);
        return std::exp(-tau) * std::pow(z + tau, ex) / a;
    };
    const auto i1 = quad::integrate(head, 0.0, std::pow(z, a), opt);
    auto tail = [&](double tau) {
        return std::exp(-tau) * std::pow(tau, a - 1.0) * std::pow(z + tau, ex);
    };
    const double peak = std::max(1.0, b + std::abs(a));
    std::vector<double> pts{z, z + 0.5 * peak, z + 2.0 * peak};
    auto i2 = quad::integrate(tail, pts, opt);
    const auto i3 = quad::integrate_to_infinity(tail, pts.back(), opt, peak);
    const double val = i1.value + i2.value + i3.value;
    if (!std::isfinite(val)) throw QuadratureError("kummer_u: non-finite integral");
    const double err = i1.abs_err + i2.abs_err + i3.abs_err;
    if (err > 1e-9 * std::abs(val)) throw QuadratureError("kummer_u: tolerance not met");
    return {val, err};
}

SpecialValue kummer_u(double a, double b, double z) {
    const auto in = kummer_u_integral(a, b, z);
    const double pref = std::exp((1.0 - b) * std::log(z) - log_gamma(a));
    return {pref * in.value, pref * in.abs_err};
}

SpecialValue kummer_m_derivative(std::complex<double> a, double b, std::complex<double> z) {
    const auto m = kummer_m(a + 1.0, b + 1.0, z);
    const auto f = a / b;
    return {f * m.value, std::abs(f) * m.abs_err};
}

SpecialValue kummer_u_derivative(double a, double b, double z) {
    const auto u = kummer_u(a + 1.0, b + 1.0, z);
    return {-a * u.value, a * u.abs_err};
}

KummerDerivatives kummer_derivatives(double a, double b, double z) {
    return {kummer_m_derivative(a, b, z), kummer_u_derivative(a, b, z)};
}

}  // namespace magres::specfun
