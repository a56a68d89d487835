/**
 * @file gauge.hpp
 * @brief Magnetic fields, vector potentials and gauge consistency checks.
 *
 * The corrected gauge is A = A_P + grad(chi(r) phi(theta)), where A_P is the
 * Poincare gauge, phi(theta) = int_0^theta (alpha - psi(t)) dt with
 * psi(theta) = int_0^inf B(z, theta) z dz, and chi is a smooth cutoff equal
 * to 0 for r <= 1 and to 1 for r >= 2.  For r >= 2 this gives
 * A = A_0 - e_theta (1/r) int_r^inf B(z, theta) z dz.
 */
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace magres::gauge {

using Vec2 = std::array<double, 2>;
using cplx = std::complex<double>;

/// A magnetic field with evaluator and metadata.
struct FieldDescriptor {
    std::string family;                         ///< gaussian, bump, b0, zero-flux-b0, zero, power
    std::function<double(double, double)> B;    ///< field at (x1, x2)
    double decay_exponent = 0.0;                ///< declared s in |B| <~ (1+|x|)^{-s}
    std::string smoothness = "smooth";
    bool radial = false;
    std::function<double(double)> radial_profile;    ///< B(r) when radial
    std::function<double(double)> radial_potential;  ///< closed-form a(r) with A = a(r) e_theta, when known
    std::vector<double> radial_breaks;          ///< radii where the profile is not smooth
    double extent = 1.0;                        ///< radius containing essentially all of the field
    double support = 0.0;                       ///< compact-support radius, 0 if unbounded
    double analytic_flux = 0.0;
    bool has_analytic_flux = false;
};

/// Gaussian bump amplitude * exp(-|x-c|^2 / width^2); flux amplitude * width^2 / 2.
FieldDescriptor gaussian_field(double amplitude, double width, double cx = 0.0, double cy = 0.0);

/// Gaussian with prescribed flux alpha.
FieldDescriptor gaussian_field_with_flux(double alpha, double width, double cx = 0.0, double cy = 0.0);

/// Smooth compactly supported bump amplitude * exp(1 - 1/(1 - (r/radius)^2)).
FieldDescriptor bump_field(double amplitude, double radius);

/// Reference field alpha/|x| inside the unit disc, zero outside.
FieldDescriptor b0_field(double alpha);

/// Zero-flux reference field (1 - r^2)(1 - 3 r^2) on the unit disc.
FieldDescriptor zero_flux_b0_field();

/// Zero field.
FieldDescriptor zero_field();

/// amplitude (1 + |x|^2)^{-s/2}, declared with decay exponent s.
FieldDescriptor power_law_field(double amplitude, double s);

/// Verifies the declared decay: s > 4 and |B|(1+|x|)^s bounded on sampled radii.
/// Throws CheckFailure otherwise.
void check_decay(const FieldDescriptor& field);

/// psi(theta) = int_0^inf B(z, theta) z dz.
double psi_profile(const FieldDescriptor& field, double theta);

/// Normalised flux (1/2pi) int B.
double flux(const FieldDescriptor& field);

/// Normalised flux through the disc of radius R.
double disc_flux(const FieldDescriptor& field, double R);

/// A_0 = alpha e_theta for |x| < 1 and alpha e_theta / |x| otherwise.
Vec2 reference_potential(double alpha, const Vec2& x);

/// Potential (r/2)(1 - r^2)^2 e_theta of the zero-flux reference field.
Vec2 zero_flux_reference_potential(const Vec2& x);

/// Poincare gauge (-x2, x1) int_0^1 B(t x) t dt.
Vec2 poincare_potential(const FieldDescriptor& field, const Vec2& x);

/// Smooth cutoff chi(r) and its first two derivatives.
std::array<double, 3> cutoff(double r);

/// Flux-matched corrected gauge for one field.
class CorrectedGauge {
public:
    /// Builds the gauge; when declared_flux is finite the computed flux must
    /// agree with it to 1e-6.
    explicit CorrectedGauge(FieldDescriptor field, double declared_flux = std::numeric_limits<double>::quiet_NaN());

    const FieldDescriptor& field() const { return field_; }
    double alpha() const { return alpha_; }

    /// Corrected potential A(x).
    Vec2 A(const Vec2& x) const;

    /// Reference potential (A_0 for nonzero flux, zero-flux reference otherwise).
    Vec2 reference(const Vec2& x) const;

    /// A(x) - reference(x), evaluated without cancellation for |x| >= 2.
    Vec2 difference(const Vec2& x) const;

    /// div A; exactly zero for radial fields.
    double divergence(const Vec2& x) const;

    /// phi(theta) and its derivative.
    double phi(double theta) const;
    double dphi(double theta) const;

    /// Angular samples of psi used by the construction.
    const std::vector<double>& psi_samples() const { return psi_; }

private:
    double d2phi(double theta) const;

    FieldDescriptor field_;
    double alpha_ = 0.0;
    std::vector<double> psi_;
    std::vector<cplx> coef_;  // Fourier coefficients c_k of psi, k = 1..N/2-1
};

/// Coefficients of T(B,V) = 2i(A - A_0).grad + i div A + (|A|^2 - |A_0|^2) + V at x.
struct PerturbationCoefficients {
    std::array<cplx, 2> first_order;  ///< 2i(A - A_0)
    cplx divergence_term;             ///< i div A
    double quadratic = 0.0;           ///< |A|^2 - |A_0|^2
    double potential = 0.0;           ///< V
};

PerturbationCoefficients perturbation_coefficients(const CorrectedGauge& gauge,
                                                   const std::function<double(double, double)>& V,
                                                   const Vec2& x);

/// Finite-difference curl and divergence of a vector field.
double curl_fd(const std::function<Vec2(const Vec2&)>& A, const Vec2& x, double h);
double divergence_fd(const std::function<Vec2(const Vec2&)>& A, const Vec2& x, double h);

/// Circulation of A over the circle of radius R by the 512-point trapezoid rule.
double circulation(const std::function<Vec2(const Vec2&)>& A, double R, int n = 512);

/// Aggregated gauge diagnostics.
struct GaugeReport {
    double flux = 0.0;
    double curl_max_err = 0.0;          ///< scaled by max |B| over the samples
    double decay_slope_A_minus_A0 = 0.0;
    bool decay_exact = false;           ///< |A - A_0| vanishes on the whole range
    bool decay_superpolynomial = false; ///< values underflow inside the range
    double stokes_defect = 0.0;
    double div_decay_slope = 0.0;
    bool div_exact = false;
    double phi_closure = 0.0;           ///< |phi(2pi) - phi(0)|
    bool passed = false;
    std::vector<std::string> failures;
};

/// Runs all gauge checks.  radii are the sample radii of the decay fits.
GaugeReport gauge_report(const FieldDescriptor& field, const std::vector<double>& radii = {},
                         std::uint64_t seed = 12345, int curl_samples = 100, double stokes_radius = 10.0);

}  // namespace magres::gauge
