/**
 * @file quadrature.hpp
 * @brief Gauss-Legendre rules, adaptive Gauss-Kronrod integration and
 *        Filon-type panels for integrands carrying a factor exp(-i*omega*x).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "magres/error.hpp"

namespace magres::quad {

/// Nodes and weights of a quadrature rule.
struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped affinely to [a, b].
Rule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre rule on consecutive panels [edges[i], edges[i+1]].
Rule composite_gauss_legendre(const std::vector<double>& edges, int n_per_panel);

/// Legendre polynomials P_0..P_{n-1} at x.
void legendre_values(double x, int n, double* out);

/// Result of an adaptive integration.
template <class T>
struct Result {
    T value{};
    double abs_err = 0.0;
    int evaluations = 0;
};

/// Tolerances and limits for adaptive integration.
struct AdaptiveOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4000;
};

namespace detail {

using GK21 = boost::math::quadrature::gauss_kronrod<double, 21>;

template <class T>
struct Segment {
    double a, b;
    T value;
    double err;
    double l1;
    bool operator<(const Segment& o) const { return err < o.err; }
};

template <class F>
auto gk21_segment(F& f, double a, double b) {
    using T = decltype(f(a));
    static const auto& xk = GK21::abscissa();
    static const auto& wk = GK21::weights();
    static const auto& wg = boost::math::quadrature::gauss<double, 10>::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fc = f(c);
    T kron = fc * wk[0];
    T gauss{};
    double l1 = std::abs(fc) * wk[0];
    // The 21-point Kronrod abscissae contain the 10-point Gauss nodes at odd indices.
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double dx = h * xk[i];
        T f1 = f(c - dx);
        T f2 = f(c + dx);
        kron += (f1 + f2) * wk[i];
        l1 += (std::abs(f1) + std::abs(f2)) * wk[i];
        if (i % 2 == 1) gauss += (f1 + f2) * wg[(i - 1) / 2];
    }
    Segment<T> s{a, b, kron * h, 0.0, l1 * std::abs(h)};
    double e = std::abs((kron - gauss) * h);
    // QUADPACK-style error scaling.
    if (e > 0.0) e = e * std::min(1.0, std::pow(200.0 * e / std::max(s.l1, 1e-300), 1.5));
    const double round = 50.0 * std::numeric_limits<double>::epsilon() * s.l1;
    s.err = std::max(e, round);
    return s;
}

}  // namespace detail

/// Globally adaptive 21-point Gauss-Kronrod integration on a finite interval.
template <class F>
auto integrate(F&& f, double a, double b, const AdaptiveOptions& opt = {})
    -> Result<decltype(f(a))> {
    using T = decltype(f(a));
    Result<T> res;
    if (a == b) return res;
    std::priority_queue<detail::Segment<T>> heap;
    auto first = detail::gk21_segment(f, a, b);
    res.evaluations = 21;
    T total = first.value;
    double err = first.err;
    double l1 = first.l1;
    heap.push(first);
    int intervals = 1;
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (intervals >= opt.max_intervals) {
            if (err <= 1e3 * std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) break;
            throw QuadratureError("adaptive quadrature: interval budget exhausted");
        }
        auto worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (!(worst.a < m && m < worst.b)) {
            // Interval can no longer be split in double precision.
            heap.push(worst);
            break;
        }
        auto left = detail::gk21_segment(f, worst.a, m);
        auto right = detail::gk21_segment(f, m, worst.b);
        res.evaluations += 42;
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
        ++intervals;
        if (err <= 50.0 * std::numeric_limits<double>::epsilon() * l1) break;
    }
    // Recompute the sum from the segments to avoid drift from incremental updates.
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().err;
        heap.pop();
    }
    res.value = sum;
    res.abs_err = esum;
    return res;
}

/// Adaptive integration over consecutive breakpoints pts[0] < pts[1] < ...
template <class F>
auto integrate(F&& f, const std::vector<double>& pts, const AdaptiveOptions& opt = {})
    -> Result<decltype(f(pts.front()))> {
    using T = decltype(f(pts.front()));
    Result<T> res;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        auto r = integrate(f, pts[i], pts[i + 1], opt);
        res.value += r.value;
        res.abs_err += r.abs_err;
        res.evaluations += r.evaluations;
    }
    return res;
}

/// Adaptive integration on [a, infinity) through the map x = a + scale*u/(1-u).
template <class F>
auto integrate_to_infinity(F&& f, double a, const AdaptiveOptions& opt = {}, double scale = 1.0)
    -> Result<decltype(f(a))> {
    using T = decltype(f(a));
    auto g = [&](double u) -> T {
        if (u >= 1.0) return T{};
        const double d = 1.0 - u;
        const double x = a + scale * u / d;
        T v = f(x);
        if (!std::isfinite(std::abs(v))) return T{};
        return v * (scale / (d * d));
    };
    return integrate(g, 0.0, 1.0, opt);
}

/// Integral over [a, b] of exp(-i*omega*x) g(x), where g is known at the nodes of
/// the Gauss-Legendre rule `ref` (on [-1,1]) mapped to [a, b].  The Legendre
/// expansion of g is integrated exactly against the exponential.
std::complex<double> filon_panel(const std::vector<std::complex<double>>& g_nodes,
                                 const Rule& ref, double a, double b, double omega);

/// Precomputed Legendre data for repeated Filon panels of a fixed order.
class FilonLegendre {
public:
    explicit FilonLegendre(int n);
    const Rule& rule() const { return rule_; }
    int order() const { return n_; }
    /// Legendre coefficients of the interpolant through the node values.
    std::vector<std::complex<double>> coefficients(const std::vector<std::complex<double>>& g) const;
    /// Panel integral from precomputed coefficients.
    std::complex<double> integrate(const std::vector<std::complex<double>>& coef, double a,
                                   double b, double omega) const;

private:
    int n_;
    Rule rule_;
    std::vector<double> p_;  // p_[k*n + j] = P_k(x_j)
};

}  // namespace magres::quad
