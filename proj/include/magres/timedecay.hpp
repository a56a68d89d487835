/**
 * @file timedecay.hpp
 * @brief Propagator matrix elements of the reference operator through Stone's
 *        formula, decay-law fits, the two Fourier-transform asymptotics and the
 *        prefactor check of the leading decay coefficient.
 *
 * For real radial states f, g in channel m,
 *   <f, exp(-itH) g> = (1/pi) int_0^inf exp(-it lambda) Im <f, R^m(lambda + i0) g> dlambda,
 * where the energy integral is smoothly windowed by
 *   w(lambda) = erfc((lambda - 0.7 Lambda) / (Lambda / 16)) / 2.
 * The window is 1 up to relative 3e-6 on [0, Lambda/2] and below 3e-12 at Lambda.
 * The integral uses Filon-Legendre panels [lambda_j, 2 lambda_j] from lambda_min
 * to 1, unit panels from 1 to Lambda, and a local power-law model on [0, lambda_min].
 */
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace magres::timedecay {

using cplx = std::complex<double>;

/// Smooth radial test state in channel m, supported in [0.2, 5]:
/// u(r) = N exp(-(r - center)^2 / (2 width^2)) chi(r), where chi is a C^inf
/// plateau rising on [0.2, 0.7] and falling on [4.5, 5], and N gives unit norm
/// in L^2(r dr).  The weight exponent s is carried as metadata only, since the
/// states are compactly supported.
struct TestState {
    int m = 0;
    double center = 2.5;
    double width = 0.7;
    double s = 2.6;
};

/// Profile value u(r).
double state_profile(const TestState& st, double r);

/// Quadrature options of the energy integral.
struct PropagatorOptions {
    double Lambda = 20.0;
    double lambda_min = 1e-6;
    int nodes_per_panel = 24;
};

/// One matrix element.
struct PropagatorElement {
    double t = 0.0;
    cplx value;
    double quadrature_error = 0.0;  ///< Legendre-truncation estimate plus the windowed-out mass
};

/// Spectral density Im <f, R(lambda + i0) g> sampled once on the Filon panels,
/// then transformed for any number of times t.
class Propagator {
public:
    /// Throws DomainError unless alpha is supported and both states are valid.
    Propagator(double alpha, const TestState& f, const TestState& g, const PropagatorOptions& opt = {});

    /// Element at time t >= 0 with t * lambda_min <= 0.05 (DomainError otherwise).
    /// Throws CheckFailure when |value| exceeds
    /// ||f|| ||g|| + 1e-6.
    PropagatorElement element(double t) const;

    /// Elements on a logarithmic t-grid.
    std::vector<PropagatorElement> elements(double t_min, double t_max, int points) const;

    /// Im <f, R(lambda + i0) g> (unwindowed).
    double spectral_density(double lambda) const;

    /// (1/pi) int_0^Lambda (1 - w)|S| dlambda + Lambda |S(Lambda)| / pi, a bound
    /// on the part of the spectral integral removed by the window and the truncation.
    double windowed_out_mass() const { return windowed_out_; }

    double alpha() const { return alpha_; }
    double mu() const { return mu_; }

private:
    double alpha_, mu_;
    TestState f_, g_;
    PropagatorOptions opt_;
    bool same_channel_;
    struct PanelData {
        double a, b;
        std::vector<cplx> coef;
    };
    std::vector<PanelData> panels_;
    double s_min_ = 0.0;       // S(lambda_min)
    double low_log_int_ = 0.0; // int_0^{lambda_min} (log lambda_min / log lambda)^2 dlambda
    double windowed_out_ = 0.0;
};

/// <f, exp(-itH) g> for one t.
PropagatorElement propagator_element(double alpha, const TestState& f, const TestState& g, double t,
                                     const PropagatorOptions& opt = {});

/// Decay-law models.
enum class DecayModel {
    Power,     ///< |v| = C t^{-p}
    PowerLog,  ///< |v| = C t^{-1} (log t)^{-2}
    Best       ///< the model with the smaller residual
};

std::string to_string(DecayModel m);

/// Result of a decay-law fit.
struct DecayFit {
    DecayModel model = DecayModel::Power;
    double exponent = 0.0;     ///< p (1 for the power-log model)
    cplx coefficient;          ///< complex least-squares coefficient of the model shape
    double r_squared = 0.0;    ///< of the chosen model in log |v|
    double residual_power = 0.0;      ///< RMS residual of log |v| for the power model
    double residual_power_log = 0.0;  ///< RMS residual of log |v| for the power-log model
    double residual_ratio = 0.0;      ///< residual_power_log / residual_power
    double t_min = 0.0, t_max = 0.0;
};

/// Fits the samples.  Requires at least 8 samples spanning 1.5 decades;
/// throws CheckFailure otherwise or when a sample vanishes.
DecayFit decay_fit(const std::vector<PropagatorElement>& samples, DecayModel model = DecayModel::Best);

/// Regularised transform (1/2 pi i) int exp(-it lambda) F(lambda + i0) chi(lambda) dlambda
/// against its closed form or oracle.
struct FourierCheck {
    double t = 0.0;
    cplx numeric;            ///< transform with the cutoff chi
    cplx closed_form;        ///< the stated asymptotic leading term
    cplx oracle;             ///< rotated-contour evaluation of the uncut transform
    double cutoff_estimate = 0.0;  ///< |numeric(chi) - numeric(chi_wide)|
    double modulus_ratio = 0.0;    ///< |numeric| / |closed_form|
    double phase_diff = 0.0;       ///< arg(numeric / closed_form)
    double oracle_rel_diff = 0.0;  ///< |numeric - oracle| / |oracle|
};

/// F = (lambda + i0)^nu, nu in (0, 1/2], t >= 10.  The closed form is
/// (i sin(pi nu) / pi) e^{i pi nu / 2} Gamma(1 + nu) t^{-1-nu}.
FourierCheck fourier_check(double nu, double t);

/// F = (log(lambda + i0))^{-k}, k in {1, 2}, t >= 10.  The closed form is the
/// leading term i (-1)^k k t^{-1} (log t)^{-k-1}.
FourierCheck fourier_log_check(int k, double t);

/// Ratio of the fitted leading coefficient to
/// K = (i/pi) sin(pi mu) e^{i pi mu/2} Gamma(1 + mu) <f, G1 g>.
struct PrefactorCheck {
    double alpha = 0.0, mu = 0.0;
    cplx fitted;        ///< coefficient of t^{-1-mu}
    cplx predicted;     ///< K
    cplx g1_element;    ///< <f, G1 g>
    cplx ratio;         ///< fitted / predicted
    double modulus_error = 0.0;  ///< | |ratio| - 1 |
    double phase_error = 0.0;    ///< |arg ratio|
};

/// <f, G1 g> from the closed-form first-order kernel (zero off channel k(alpha)).
cplx g1_element(double alpha, const TestState& f, const TestState& g);

/// Fits v(t) t^{1+mu} = c0 + c1 t^{-mu} + c2 t^{-1+mu} over the t-grid by
/// complex least squares and compares c0 with K.  Requires 0 < mu < 1/2.
PrefactorCheck prefactor_check(double alpha, const TestState& f, const TestState& g, double t_min = 1e2,
                               double t_max = 1e4, int points = 24, const PropagatorOptions& opt = {});

}  // namespace magres::timedecay
