/**
 * @file quadrature.cpp
 * @brief Gauss-Legendre node generation and Filon-Legendre panels.
 */
#include "magres/quadrature.hpp"

#include <numbers>

namespace magres::quad {

Rule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess followed by Newton iteration on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = -x;
        r.w[i] = w;
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

Rule gauss_legendre(int n, double a, double b) {
    Rule r = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.x[i] = c + h * r.x[i];
        r.w[i] *= h;
    }
    return r;
}

Rule composite_gauss_legendre(const std::vector<double>& edges, int n_per_panel) {
    Rule ref = gauss_legendre(n_per_panel);
    Rule out;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double c = 0.5 * (edges[p] + edges[p + 1]);
        const double h = 0.5 * (edges[p + 1] - edges[p]);
        for (int i = 0; i < n_per_panel; ++i) {
            out.x.push_back(c + h * ref.x[i]);
            out.w.push_back(h * ref.w[i]);
        }
    }
    return out;
}

void legendre_values(double x, int n, double* out) {
    if (n <= 0) return;
    out[0] = 1.0;
    if (n == 1) return;
    out[1] = x;
    for (int k = 2; k < n; ++k) out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

FilonLegendre::FilonLegendre(int n) : n_(n), rule_(gauss_legendre(n)), p_(static_cast<std::size_t>(n) * n) {
    std::vector<double> tmp(n);
    for (int j = 0; j < n; ++j) {
        legendre_values(rule_.x[j], n, tmp.data());
        for (int k = 0; k < n; ++k) p_[static_cast<std::size_t>(k) * n + j] = tmp[k];
    }
}

std::vector<std::complex<double>> FilonLegendre::coefficients(
    const std::vector<std::complex<double>>& g) const {
    std::vector<std::complex<double>> c(n_);
    for (int k = 0; k < n_; ++k) {
        std::complex<double> s = 0.0;
        for (int j = 0; j < n_; ++j) s += rule_.w[j] * g[j] * p_[static_cast<std::size_t>(k) * n_ + j];
        c[k] = s * (0.5 * (2.0 * k + 1.0));
    }
    return c;
}

std::complex<double> FilonLegendre::integrate(const std::vector<std::complex<double>>& coef,
                                              double a, double b, double omega) const {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double x = omega * h;
    const double ax = std::abs(x);
    std::vector<double> j(n_);
    if (ax > static_cast<double>(n_)) {
        // Upward recurrence is stable for orders below the argument.
        j[0] = std::sin(ax) / ax;
        if (n_ > 1) j[1] = std::sin(ax) / (ax * ax) - std::cos(ax) / ax;
        for (int k = 2; k < n_; ++k) j[k] = (2.0 * k - 1.0) / ax * j[k - 1] - j[k - 2];
    } else {
        for (int k = 0; k < n_; ++k) j[k] = (ax == 0.0) ? (k == 0 ? 1.0 : 0.0) : std::sph_bessel(k, ax);
    }
    std::complex<double> sum = 0.0;
    std::complex<double> phase = 1.0;  // (-i)^k
    for (int k = 0; k < n_; ++k) {
        const double jk = j[k] * ((k % 2 && x < 0) ? -1.0 : 1.0);
        sum += coef[k] * phase * (2.0 * jk);
        phase *= std::complex<double>(0.0, -1.0);
    }
    return h * std::exp(std::complex<double>(0.0, -omega * c)) * sum;
}

std::complex<double> filon_panel(const std::vector<std::complex<double>>& g_nodes, const Rule& ref,
                                 double a, double b, double omega) {
    const int n = static_cast<int>(ref.x.size());
    FilonLegendre fl(n);
    return fl.integrate(fl.coefficients(g_nodes), a, b, omega);
}

}  // namespace magres::quad
