/**
 * @file expansion.hpp
 * @brief Weighted kernel norms, threshold-expansion fits, Nystrom-discretised
 *        perturbed coefficients and the Hardy-ratio probe.
 *
 * Norms act on radial kernels K(r, r') of operators on L^2((0, inf), r dr).
 * The full two-dimensional kernel is (1/2pi) sum_m exp(-i m (theta - theta')) K_m(r, r'),
 * so Hilbert-Schmidt norms of radial multiples of the full kernel are the
 * l^2 sums of the channel norms.  The weight is rho(r) = 1 + r.
 */
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "magres/fit.hpp"
#include "magres/gauge.hpp"
#include "magres/refop.hpp"

namespace magres::expansion {

using cplx = std::complex<double>;
using refop::Side;

/// Quadrature grid on [r_min, r_max] with dr weights.
struct RadialGrid {
    std::vector<double> r;
    std::vector<double> w;
    double r_min = 0.0, r_max = 0.0;
    std::size_t size() const { return r.size(); }
};

/// n Gauss-Legendre nodes in t = log r, split at r = 1 in proportion to the
/// logarithmic lengths of the two pieces.
RadialGrid radial_grid(int n = 200, double r_min = 1e-3, double r_max = 50.0);

/// Relative error of the grid on int r^{1+2 nu} rho^{-2s} dr (an envelope of
/// the threshold kernels) against adaptive quadrature.
double grid_exactness(const RadialGrid& grid, double nu, double s);

enum class NormMethod { HilbertSchmidt, SchurHolmgrenHybrid };

std::string to_string(NormMethod m);

/// A weighted-norm value for a channel kernel or a sum over channels.
struct WeightedNormEstimate {
    double s = 0.0;
    double lambda = 0.0;
    int m = 0;
    bool all_channels = false;
    double value = 0.0;
    NormMethod method = NormMethod::HilbertSchmidt;
};

/// Weighted norm of a kernel given on the grid (row-major n x n).
///  - HilbertSchmidt: (sum |K_ij|^2 rho_i^{-2s} rho_j^{-2s} r_i r_j w_i w_j)^{1/2};
///  - SchurHolmgrenHybrid: sqrt(M1 M2) on (0,1)^2, where M1 and M2 are the
///    row and column suprema of the weighted absolute kernel, plus the
///    Hilbert-Schmidt norm of the remaining blocks.
double weighted_norm(const std::vector<cplx>& K, const RadialGrid& grid, double s, NormMethod method);

/// Weighted norm of a kernel evaluator K(r, r').
WeightedNormEstimate weighted_channel_norm(const std::function<cplx(double, double)>& K, int m, double lambda,
                                           double s, NormMethod method, const RadialGrid& grid);

/// Largest Rayleigh-type quotient |<x, W K W y>| over random unit vectors, a
/// lower bound for the weighted operator norm.
double operator_norm_lower_bound(const std::vector<cplx>& K, const RadialGrid& grid, double s, int trials = 20,
                                 unsigned seed = 7);

/// Which part of the expansion is subtracted from R_0(lambda).
enum class RemainderMode {
    ZeroOrder,  ///< R_0 - G_0 (or R_0 - script G_0 for integer flux)
    Full        ///< additionally subtract lambda^mu G_1 (or (log lambda)^{-1} script G_1)
};

/// Channel remainder kernel matrix on the grid.
std::vector<cplx> remainder_matrix(double alpha, int m, double lambda, Side side, RemainderMode mode,
                                   const RadialGrid& grid);

/// Hilbert-Schmidt norm of rho^{-s}(R_0(lambda) - ...)rho^{-s} summed over
/// the channels |m - k(alpha)| <= m_span.
double remainder_norm(double alpha, double lambda, Side side, double s, RemainderMode mode, const RadialGrid& grid,
                      int m_span = 8);

/// Result of the non-integer threshold fits.
struct ThresholdFit {
    double alpha = 0.0, mu = 0.0, s = 0.0;
    Side side = Side::Plus;
    std::vector<double> lambdas;
    std::vector<double> norm_zero_order;  ///< ||rho^{-s}(R_0 - G_0)rho^{-s}||
    std::vector<double> norm_full;        ///< ||rho^{-s} G_2 rho^{-s}||
    fit::PowerLawFit fit_zero_order;
    fit::PowerLawFit fit_full;
    bool exponent_ok = false;   ///< |fit_zero_order.exponent - mu| <= 0.05
    bool remainder_ok = false;  ///< fit_full.exponent >= mu + 0.1
    bool r_squared_ok = false;  ///< both fits have r^2 >= 0.99
};

/// Fits over lambda_grid (absolute values; the sign is taken from the side:
/// negative lambdas are used as given).  The largest-|lambda| node is dropped
/// from the fits.
ThresholdFit threshold_fit(double alpha, double s, const std::vector<double>& lambda_grid, Side side = Side::Plus,
                           const RadialGrid& grid = radial_grid(), int m_span = 8);

/// Result of the integer-flux log-law check.
struct IntegerFit {
    int alpha = 0;
    double s = 0.0;
    std::vector<double> lambdas;
    std::vector<double> norm;              ///< ||rho^{-s}(R_0 - script G_0)rho^{-s}||
    std::vector<double> scaled;            ///< norm * |log lambda|
    std::vector<double> subtracted_scaled; ///< ||... - (log lambda)^{-1} script G_1|| * |log lambda|
    double plateau_variation = 0.0;        ///< (max - min) / mean of scaled
    bool plateau_ok = false;               ///< variation <= 0.1
    bool subtracted_decreasing = false;    ///< subtracted_scaled decreases over the last three nodes
};

IntegerFit integer_threshold_fit(int alpha, double s, const std::vector<double>& lambda_grid,
                                 const RadialGrid& grid = radial_grid(), int m_span = 8);

/// Coefficient of lambda^mu in channel k(alpha), extracted by least squares on
/// the columns lambda^mu, lambda^{2mu}, lambda^{3mu}, lambda for one side of
/// the spectrum.
struct BranchCoefficient {
    double r = 0.0, rp = 0.0;
    cplx from_positive;  ///< extracted from lambda > 0 (+ side)
    cplx from_negative;  ///< extracted from lambda < 0
    cplx exact;          ///< closed-form g1
    double rel_diff = 0.0;  ///< |from_positive - from_negative| / |from_positive|
};

BranchCoefficient branch_coefficient(double alpha, double r, double rp, const std::vector<double>& abs_lambdas);

/// Weighted norm built from |d_{r'} G_{m,2}|^2 + (m^2 / r'^2)|G_{m,2}|^2.
WeightedNormEstimate gradient_remainder_norm(double alpha, int m, double lambda, double s,
                                             const RadialGrid& grid = radial_grid());

/// Per-channel Nystrom data for the perturbed coefficients.
struct NystromChannel {
    int m = 0;
    std::vector<cplx> G0, G1, F0, F1;  ///< row-major kernels on the grid
    std::vector<double> t;            ///< channel coefficient t_m(r)
    double identity_residual = 0.0;   ///< ||(1 + G0 T)F0 - G0|| / ||G0||
    double duality_residual = 0.0;    ///< ||T(1+G0T)^{-1}G0 - (1+TG0)^{-1}TG0|| / ||T F0||
    double margin = 0.0;              ///< smallest singular value of 1 + G0 T in L^2(r dr)
    double resolvent_agreement = 0.0; ///< weighted ||F(lambda) - F0|| / ||F0|| at lambda_check
    double resolvent_agreement_first_order = 0.0;  ///< same with F0 + lambda^mu F1
    double f1_minus_g1 = 0.0;         ///< weighted ||F1 - G1||
};

struct NystromResult {
    double alpha = 0.0;
    double s = 0.0;
    double lambda_check = 0.0;
    RadialGrid grid;
    std::vector<NystromChannel> channels;
};

/// Solves (1 + G_0 T)F_0 = G_0 and assembles F_1 = (1 + G_0 T)^{-1} G_1 (1 + T G_0)^{-1}
/// per channel for radial B and V.  Throws CheckFailure when the field is not
/// radial, its flux differs from alpha by more than 1e-6, V decays slower than
/// (1+r)^{-3}, or the invertibility margin is below 1e-6.
NystromResult nystrom_perturbed(double alpha, const gauge::FieldDescriptor& field,
                                const std::function<double(double)>& V, double s, const std::vector<int>& m_set,
                                double lambda_check = 1e-6, const RadialGrid& grid = radial_grid());

/// Gaussian trial function exp(-|x - c|^2 / (2 sigma^2)).
struct HardyTrial {
    double cx = 0.0, cy = 0.0, sigma = 1.0;
};

/// Q[u] / int |u|^2 / w for the corrected potential of the gauge.  w = 1 + |x|^2
/// for non-integer flux and for zero flux, w = 1 + |x|^2 (log|x|)^2 for nonzero
/// integer flux.
double hardy_ratio(const gauge::CorrectedGauge& gauge, const HardyTrial& trial);

/// Ratios over a trial family together with the log-log slope against sigma.
struct HardySweep {
    std::vector<HardyTrial> trials;
    std::vector<double> ratios;
    double minimum = 0.0;
    double slope = 0.0;  ///< d log(ratio) / d log(sigma)
};

HardySweep hardy_sweep(const gauge::CorrectedGauge& gauge, const std::vector<double>& sigmas, double cx = 0.0,
                       double cy = 0.0);

}  // namespace magres::expansion
