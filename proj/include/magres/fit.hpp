/**
 * @file fit.hpp
 * @brief Least-squares fits used by the threshold and decay analyses.
 */
#pragma once

#include <complex>
#include <vector>

namespace magres::fit {

/// |y| = C x^p fitted on log-log axes.
struct PowerLawFit {
    double exponent = 0.0;
    std::complex<double> coefficient{};
    double r_squared = 0.0;
    double max_residual = 0.0;  ///< largest |residual| in log space
    int nodes = 0;
};

/// Log-log least-squares fit of |y| against x over all nodes with y != 0.
PowerLawFit power_law(const std::vector<double>& x, const std::vector<double>& y);

/// Log-log slope restricted to positive, normal values.
struct SlopeResult {
    double slope = 0.0;
    bool exact_zero = false;        ///< every value is exactly zero
    bool superpolynomial = false;   ///< values underflow before the end of the range
    int used = 0;
};

SlopeResult log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Ordinary least squares min |A c - b| for a column-major design matrix
/// given as columns.  Returns the coefficients and the residual norm.
struct LinearFit {
    std::vector<std::complex<double>> coef;
    double residual_norm = 0.0;
    double rhs_norm = 0.0;
};

LinearFit least_squares(const std::vector<std::vector<std::complex<double>>>& columns,
                        const std::vector<std::complex<double>>& rhs);

/// Coefficient of determination of log|y| against log x for a given slope and intercept.
double r_squared_log(const std::vector<double>& x, const std::vector<double>& y, double slope, double intercept);

}  // namespace magres::fit
