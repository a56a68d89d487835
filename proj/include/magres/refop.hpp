/**
 * @file refop.hpp
 * @brief Partial-wave resolvent kernels of the reference operator with field
 *        alpha/|x| inside the unit disc and zero outside.
 *
 * Channel m carries the radial operator
 *   h_m = -d^2/dr^2 - (1/r) d/dr + (m/r + a0(r))^2,
 * with a0 = alpha for r < 1 and alpha/r for r >= 1.  Kernels are taken with
 * respect to the measure r dr, so that
 *   R^m(r, r') = f(r_<) phi(r_>) / W,   W = f'(1) phi(1) - f(1) phi'(1),
 * where f is regular at the origin and phi is outgoing (lambda > 0) or
 * decaying (lambda < 0) at infinity.  The two-dimensional kernel is
 *   K(x, y) = (1/2pi) sum_m R^m(|x|, |y|) exp(-i m (theta_x - theta_y)).
 */
#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace magres::refop {

using cplx = std::complex<double>;

/// Flux data derived from alpha.
struct FluxParams {
    double alpha = 0.0;
    double mu = 0.0;                 ///< distance from alpha to the nearest integer
    int k_star = 0;                  ///< minimiser of |k + alpha|
    std::optional<int> k_star_alt;   ///< second minimiser when mu = 1/2
    bool integer_flux = false;
    bool tie() const { return k_star_alt.has_value(); }
};

/// Flux parameters for |alpha| <= 50.
FluxParams flux_params(double alpha);

/// Boundary value of the resolvent: lambda + i0 or lambda - i0.
enum class Side { Plus, Minus };

/// Spectral parameter with the interior decay constant kappa = sqrt(alpha^2 - lambda).
struct SpectralPoint {
    double lambda = 0.0;
    Side side = Side::Plus;
    cplx kappa{};
};

SpectralPoint spectral_point(double alpha, double lambda, Side side = Side::Plus);

/// Interior solutions v (regular) and u (Kummer U type) with r-derivatives.
struct InteriorValues {
    cplx v, dv, u, du;
    double abs_err = 0.0;
};

/// Kummer-form interior solutions at r in (0, 1].  The U solution requires a
/// real positive kappa and a positive first Kummer parameter.
InteriorValues interior_solutions(double alpha, int m, const SpectralPoint& pt, double r);

/// First Kummer parameter 1/2 + |m| + m alpha / kappa.
cplx kummer_a(double alpha, int m, cplx kappa);

/// Exterior and interior matching data of one channel.
///
/// For r >= 1 the regular solution is A P + B Q with (P, Q) = (J, Y) for
/// lambda > 0 and (I, K) for lambda < 0, taken at sqrt(|lambda|) r.  For
/// r <= 1 the outgoing solution is C y1 + D y2 in the interior basis.
struct MatchingCoefficients {
    cplx A, B, C, D, W;
};

/// Values and r-derivatives of a solution pair at one radius.
struct SolutionPair {
    cplx f, df, phi, dphi;
};

/// Resolvent of a single channel at a fixed spectral point.
class ChannelResolvent {
public:
    ChannelResolvent(double alpha, int m, double lambda, Side side = Side::Plus);

    int m() const { return m_; }
    double alpha() const { return alpha_; }
    double nu() const { return nu_; }
    const SpectralPoint& point() const { return pt_; }
    const MatchingCoefficients& matching() const { return mc_; }
    cplx wronskian() const { return mc_.W; }

    /// Regular solution f and outgoing solution phi with derivatives at r > 0.
    SolutionPair solutions(double r) const;

    /// R^m(r, rp).
    cplx kernel(double r, double rp) const;

    /// Kernel on a tensor grid, out[i * n + j] = R^m(r_i, r_j).
    std::vector<cplx> kernel_matrix(const std::vector<double>& r) const;

    /// Interior basis (y1, y1', y2, y2') at r in (0, 1].
    InteriorValues interior_basis(double r) const;

    /// True when the interior second solution is the Kummer U solution.
    bool uses_kummer_u() const { return use_u_; }

private:
    SolutionPair plus_side(double r) const;

    double alpha_;
    int m_;
    double nu_;
    SpectralPoint pt_;
    bool negative_;
    bool use_kummer_v_;
    bool use_u_;
    cplx a_;
    double k_;
    std::vector<std::complex<long double>> c_, d_;
    std::complex<long double> log_coef_;
    MatchingCoefficients mc_;
};

/// Matching coefficients of channel m (see MatchingCoefficients).
MatchingCoefficients matching_coefficients(double alpha, int m, double lambda, Side side = Side::Plus);

/// R^m(lambda +- i0; r, rp).
cplx channel_kernel(double alpha, int m, double lambda, Side side, double r, double rp);

/// Two-dimensional kernel summed over |m| <= m_max.
struct FullKernelValue {
    cplx value;
    double tail_bound = 0.0;
};

/// K(x, y) with x, y given in Cartesian coordinates.  Throws when the tail
/// bound exceeds tail_tol.
FullKernelValue full_kernel(double alpha, double lambda, Side side, const double x[2], const double y[2],
                            int m_max = 40, double tail_tol = 1e-6);

/// Zero-energy constants of channel m: v, v', u, u' at r = 1 and lambda = 0.
struct ThresholdConstants {
    int m = 0;
    double nu = 0.0;     ///< |m + alpha|
    double a = 0.0, ap = 0.0, b = 0.0, bp = 0.0;
    double kummer_a = 0.0;
    double kummer_b = 0.0;
    double omega = 0.0;  ///< v'u - vu' = Gamma(kummer_b) / Gamma(kummer_a)
};

/// Zero-energy channel data and kernels.
class ThresholdChannel {
public:
    ThresholdChannel(double alpha, int m);

    const ThresholdConstants& constants() const { return tc_; }
    double alpha() const { return alpha_; }

    /// v(0, r) and u(0, r) for r in (0, 1].
    double v(double r) const;
    double u(double r) const;

    /// G_{m,0}(r, rp); for nu = 0 this is the integer-flux kernel.
    double g0(double r, double rp) const;

    /// g0 on a tensor grid.
    std::vector<double> g0_matrix(const std::vector<double>& r) const;

private:
    double alpha_;
    ThresholdConstants tc_;
};

ThresholdConstants threshold_constants(double alpha, int m);

/// G_{m,0}(r, rp) of the threshold expansion.
double threshold_g0(double alpha, int m, double r, double rp);

/// Coefficient g1 of lambda^mu in channel k(alpha); requires 0 < mu < 1/2.
cplx threshold_g1(const FluxParams& fp, double r, double rp);

/// Prefactor pi (i - cot(mu pi)) / (4^mu Gamma(mu)^2) of g1.
cplx g1_prefactor(double mu);

/// Integer-flux zero-energy kernel and (log lambda)^{-1} coefficient of channel -alpha.
struct IntegerThreshold {
    double g0;
    double k1;
};

IntegerThreshold threshold_integer(int alpha, double r, double rp);

/// lambda^mu on the + side, with lambda^mu = |lambda|^mu exp(i pi mu) for lambda < 0.
cplx lambda_power(double lambda, double mu, Side side = Side::Plus);

/// log(lambda + i0), equal to log|lambda| + i pi for lambda < 0.
cplx lambda_log(double lambda, Side side = Side::Plus);

/// R^m - G_{m,0} - lambda^mu delta_{m,k} g1 (non-integer flux) or
/// R^m - G_{m,0} - (log lambda)^{-1} delta_{m,-alpha} k1 (integer flux).
cplx remainder_kernel(double alpha, int m, double lambda, Side side, double r, double rp);

}  // namespace magres::refop
