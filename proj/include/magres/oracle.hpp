/**
 * @file oracle.hpp
 * @brief Brute-force channel Green's functions by direct integration of the
 *        radial equation, and extended-precision series references.
 *
 * The radial equation is integrated in t = log r as
 *   f_tt = (r^2 (m/r + a0(r))^2 - lambda r^2) f,
 * which removes the r^{-2} singularity at the origin.  The regular solution is
 * started from Frobenius data at r0 = 1e-4; the outgoing or decaying solution
 * is started from the Hankel asymptotic series at a large radius.
 */
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace magres::oracle {

using cplx = std::complex<double>;

/// Integration settings.
struct OdeOptions {
    double r0 = 1e-4;
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
};

/// Solution values on a radial grid.
struct OdeSolution {
    int m = 0;
    cplx lambda;
    std::vector<double> r;
    std::vector<cplx> f, df;  ///< f and df/dr
};

/// Regular solution on an increasing grid inside [r0, infinity).
OdeSolution regular_solution(double alpha, int m, cplx lambda, const std::vector<double>& grid,
                             const OdeOptions& opt = {});

/// Outgoing (Im sqrt(lambda) >= 0 branch) solution on a grid, shot inward from
/// R = max(50, 40 / sqrt|lambda|).
OdeSolution outgoing_solution(double alpha, int m, cplx lambda, const std::vector<double>& grid,
                              const OdeOptions& opt = {});

/// Outer starting radius used by outgoing_solution.
double outer_radius(cplx lambda);

/// Green's function f(r_<) phi(r_>) / W for complex lambda with Im lambda >= 0.
cplx ode_green(double alpha, int m, cplx lambda, double r, double rp, const OdeOptions& opt = {});

/// Boundary value at lambda + i0 (or lambda - i0 when plus_side is false) from
/// eps = 1e-4, 1e-5 and linear Richardson extrapolation.
cplx ode_green_boundary(double alpha, int m, double lambda, double r, double rp, bool plus_side = true,
                        const OdeOptions& opt = {});

/// Free radial Green's function (i pi / 2) J_|m|(k r_<) H^(1)_|m|(k r_>), lambda > 0.
cplx free_green(int m, double lambda, double r, double rp);

/// Extended-precision (50 digit) reference values, returned as decimal strings
/// and doubles.
struct Reference {
    double value;
    std::string digits;
};

/// Kummer M(a, b, z) by direct summation in 50-digit arithmetic.
Reference kummer_m_reference(double a, double b, double z, int terms = 400);

/// J_nu(z) by the ascending series in 50-digit arithmetic.
Reference bessel_j_reference(double nu, double z, int terms = 200);

/// Gamma(x) from the integral of t^{x-1} e^{-t} with tail splitting.
Reference gamma_integral_reference(double x);

/// Regular interior solution e^{-kappa r}(2 kappa r)^|m| M(a, 1+2|m|, 2 kappa r)
/// at real kappa > 0 in 50-digit arithmetic.
Reference interior_v_reference(double alpha, int m, double kappa, double r, int terms = 400);

}  // namespace magres::oracle
