/**
 * @file fit.cpp
 * @brief Least-squares fitting helpers.
 */
#include "magres/fit.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "magres/error.hpp"

namespace magres::fit {

double r_squared_log(const std::vector<double>& x, const std::vector<double>& y, double slope, double intercept) {
    double mean = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] == 0.0) continue;
        mean += std::log(std::abs(y[i]));
        ++n;
    }
    mean /= n;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] == 0.0) continue;
        const double ly = std::log(std::abs(y[i]));
        const double res = ly - (intercept + slope * std::log(x[i]));
        ss_res += res * res;
        ss_tot += (ly - mean) * (ly - mean);
    }
    return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
}

PowerLawFit power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("power_law: size mismatch");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || y[i] == 0.0 || !std::isfinite(y[i])) continue;
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw CheckFailure("power_law: fewer than two usable nodes");
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw CheckFailure("power_law: degenerate abscissae");
    PowerLawFit f;
    f.exponent = (n * sxy - sx * sy) / den;
    const double intercept = (sy - f.exponent * sx) / n;
    f.coefficient = std::exp(intercept);
    f.nodes = n;
    f.r_squared = r_squared_log(x, y, f.exponent, intercept);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || y[i] == 0.0 || !std::isfinite(y[i])) continue;
        const double res = std::log(std::abs(y[i])) - (intercept + f.exponent * std::log(x[i]));
        f.max_residual = std::max(f.max_residual, std::abs(res));
    }
    return f;
}

SlopeResult log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    SlopeResult s;
    std::vector<double> xs, ys;
    bool all_zero = true;
    bool underflow_tail = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = std::abs(y[i]);
        if (v != 0.0) all_zero = false;
        if (v >= std::numeric_limits<double>::min() && std::isfinite(v)) {
            xs.push_back(x[i]);
            ys.push_back(v);
        } else if (!xs.empty()) {
            underflow_tail = true;
        }
    }
    if (all_zero) {
        s.exact_zero = true;
        s.slope = -std::numeric_limits<double>::infinity();
        return s;
    }
    s.superpolynomial = underflow_tail;
    s.used = static_cast<int>(xs.size());
    if (xs.size() < 2) {
        s.superpolynomial = true;
        s.slope = -std::numeric_limits<double>::infinity();
        return s;
    }
    s.slope = power_law(xs, ys).exponent;
    return s;
}

LinearFit least_squares(const std::vector<std::vector<std::complex<double>>>& columns,
                        const std::vector<std::complex<double>>& rhs) {
    const int n = static_cast<int>(rhs.size());
    const int k = static_cast<int>(columns.size());
    if (k == 0 || n < k) throw DomainError("least_squares: need at least as many rows as columns");
    Eigen::MatrixXcd A(n, k);
    Eigen::VectorXcd b(n);
    for (int j = 0; j < k; ++j) {
        if (static_cast<int>(columns[j].size()) != n) throw DomainError("least_squares: column size mismatch");
        for (int i = 0; i < n; ++i) A(i, j) = columns[j][i];
    }
    for (int i = 0; i < n; ++i) b(i) = rhs[i];
    const Eigen::VectorXcd c = A.colPivHouseholderQr().solve(b);
    LinearFit out;
    out.coef.assign(c.data(), c.data() + k);
    out.residual_norm = (A * c - b).norm();
    out.rhs_norm = b.norm();
    return out;
}

}  // namespace magres::fit
