/**
 * @file bounds.hpp
 * @brief Numerical checks of the auxiliary Bessel and Kummer estimates.
 *
 * Each lemma id maps to a configured parameter grid.  For every grid point
 * the left-hand side is computed by quadrature (or direct evaluation) and the
 * right-hand side from the stated envelope with constant 1.  Rows are grouped
 * into levels along the asymptotic parameter of the estimate (lambda -> 0,
 * nu -> infinity or z moving away from 1).  A lemma is stable when the
 * level maxima stop growing: over the last two steps the log-log growth rate
 * against the asymptotic parameter is at most step_tolerance.  Exact lemmas
 * must in addition respect the constant 1 pointwise.
 *
 * Integrals over (1, inf) and over the triangle 1 < r < r' use Gauss-Legendre
 * panels: geometric up to 2/sqrt(lambda), panels of length pi/sqrt(lambda) up
 * to tail_factor/sqrt(lambda), then geometric panels on which squared
 * cylinder functions are replaced by their oscillation averages.  The last
 * stretch to infinity is a geometric-series extrapolation of the panel sums.
 */
#pragma once

#include <string>
#include <vector>

namespace magres::bounds {

/// One grid point of a bound check.
struct BoundRow {
    std::string label;          ///< series name and fixed parameters
    int level = 0;              ///< index along the asymptotic parameter
    double level_value = 0.0;   ///< lambda, nu or z of the level
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;         ///< lhs / rhs
};

/// Ratio table of one lemma with its verdict.
struct BoundReport {
    std::string lemma_id;
    std::string level_parameter;
    bool exact = false;               ///< the inequality carries an explicit constant
    std::vector<BoundRow> rows;
    std::vector<double> level_max;    ///< maximum ratio per level
    std::vector<double> level_coordinate;  ///< log of the asymptotic parameter per level (increasing)
    std::vector<double> growth_rate;  ///< d log(level_max) / d level_coordinate per step
    bool finite = false;              ///< every ratio is finite
    bool stable = false;              ///< the last two growth rates are <= step_tolerance
    bool within_constant = true;      ///< exact lemmas: every ratio <= 1 + 1e-12
    bool passed = false;
    std::string note;
};

/// Grid and discretisation settings.
struct BoundConfig {
    double s = 1.7;                  ///< weight exponent, rho = 1 + r
    double eps = 0.1;                ///< epsilon with s > 3/2 + epsilon
    std::vector<double> lambdas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    std::vector<double> nus;         ///< overrides the per-lemma order grid when non-empty
    double tail_factor = 400.0;      ///< exact evaluation up to tail_factor / sqrt(lambda)
    double step_tolerance = 0.05;    ///< largest admissible log-log growth rate of the level maxima
};

/// The enumerated lemma ids.
const std::vector<std::string>& bound_lemma_ids();

/// Runs one check.  Throws DomainError for an unknown id and QuadratureError
/// when a tail extrapolation does not converge.
BoundReport bound_check(const std::string& lemma_id, const BoundConfig& config = {});

}  // namespace magres::bounds
