/**
 * @file specfun.hpp
 * @brief Gamma, Bessel J/Y/I/K of real order and Kummer M/U with error estimates.
 *
 * Bessel functions of non-negative order use Temme's series for small
 * arguments and Steed's continued fractions otherwise, so integer and
 * non-integer orders share one code path.  Negative non-integer J orders use
 * the ascending power series for moderate arguments and the reflection
 * identity J_{-nu} = cos(nu pi) J_nu - sin(nu pi) Y_nu beyond that.
 */
#pragma once

#include <complex>

namespace magres::specfun {

/// Value with an absolute error estimate.
struct SpecialValue {
    std::complex<double> value{};
    double abs_err = 0.0;

    double real() const { return value.real(); }
    double imag() const { return value.imag(); }
};

enum class BesselKind { J, Y, I, K };

/// Largest |order| accepted by the Bessel evaluators.
inline constexpr double kMaxOrder = 60.0;

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Gamma function on (0, 60]; relative error below 1e-13.
double gamma(double x);

/// Gamma function on (0, 171) without the public domain restriction.
double gamma_unchecked(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// 1/Gamma(x) for every real x (zero at the non-positive integers).
double rgamma(double x);

/// J, Y and their derivatives for nu >= 0, x > 0.
struct BesselJY {
    double j, y, jp, yp;
};
BesselJY bessel_jy(double nu, double x);

/// I, K and their derivatives for nu >= 0, x > 0.
struct BesselIK {
    double i, k, ip, kp;
};
BesselIK bessel_ik(double nu, double x);

/// Ascending power series for J_nu(z); nu must not be a negative integer.
SpecialValue bessel_j_series(double nu, double z);

/// Bessel function of the given kind, order nu and argument z > 0.
SpecialValue bessel(BesselKind kind, double nu, double z);

/// z-derivative of the Bessel function of the given kind.
SpecialValue bessel_derivative(BesselKind kind, double nu, double z);

/// Integral representation of Y_nu for nu > 0, used only as a cross-check.
SpecialValue bessel_y_integral(double nu, double z);

/// Kummer M(a, b, z) with complex a and z, real b > 0.
SpecialValue kummer_m(std::complex<double> a, double b, std::complex<double> z);

/// Integral  int_0^inf exp(-tau) tau^(a-1) (z+tau)^(b-a-1) dtau, equal to
/// Gamma(a) z^(b-1) U(a, b, z).  Requires a > 0, b > 0, z > 0.
SpecialValue kummer_u_integral(double a, double b, double z);

/// Tricomi U(a, b, z) for a > 0, b > 0, z > 0 by quadrature.
SpecialValue kummer_u(double a, double b, double z);

/// dM/dz and dU/dz.
struct KummerDerivatives {
    SpecialValue dm;
    SpecialValue du;
};

/// dM/dz = (a/b) M(a+1, b+1, z).
SpecialValue kummer_m_derivative(std::complex<double> a, double b, std::complex<double> z);

/// dU/dz = -a U(a+1, b+1, z).
SpecialValue kummer_u_derivative(double a, double b, double z);

/// Both derivatives at real arguments.
KummerDerivatives kummer_derivatives(double a, double b, double z);

}  // namespace magres::specfun
