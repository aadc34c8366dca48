#pragma once

// Closed-form quantities for a qubit coupled to a Lorentzian vacuum reservoir
// centred on the atomic transition, including counter-rotating couplings.

#include <complex>

namespace nmdyn {

using cplx = std::complex<double>;

/// Atom frequency and Lorentzian reservoir, all in one frequency unit.
struct BathParams {
  double omega0 = 0.0;  ///< atomic transition frequency
  double gamma = 0.0;   ///< spectral width of the Lorentzian
  double lambda = 0.0;  ///< coupling strength

  /// Throws DomainError unless all three are finite and positive.
  void validate() const;
  double correlation_time() const { return 1.0 / gamma; }
};

/// Which generator to evaluate. `truncated_rwa` drops the counter-rotating
/// contributions (eps_plus, eps_minus and the alpha-derived pieces of the
/// decay, frequency shift and nu terms). It is an exploration aid only.
enum class Generator { full, truncated_rwa };

/// Time-dependent coefficients of the J (coherence) and K (population)
/// superoperators in the master equation.
struct CoefficientSet {
  cplx eps0;
  cplx eps_plus;
  cplx eps_minus;
  double nu0 = 0.0;
  double nu_plus = 0.0;
  double nu_minus = 0.0;
};

/// J(w) = (1/2pi) lambda gamma^2 / ((w - w0)^2 + gamma^2).
double spectral_density(double omega, const BathParams& p);

/// Rotating-wave correlation function (gamma lambda / 2) e^{-gamma t}.
cplx alpha1(double t, const BathParams& p);

/// Counter-rotating correlation function (gamma lambda / 2) e^{(-gamma + 2 i w0) t}.
cplx alpha2(double t, const BathParams& p);

/// alpha(t) = (1 - e^{-(gamma + 2 i w0) t}) / (gamma + 2 i w0).
cplx alpha(double t, const BathParams& p);

/// Integral of alpha over [0, t], evaluated from its closed form.
cplx alpha_tilde(double t, const BathParams& p);

/// f(t) = 1 - e^{-gamma t}
double memory_f(double t, double gamma);

/// F(t) = t - (1 - e^{-gamma t}) / gamma, the integral of f.
double memory_F(double t, double gamma);

/// Rate of the scalar damping term, (lambda/2)(gamma alpha^R + f); equals d Gamma_k / dt.
double scalar_damping(double t, const BathParams& p, Generator g = Generator::full);

/// Gamma_k(t) = lambda (gamma alpha_tilde^R + F(t)) / 2.
double decay_exponent(double t, const BathParams& p, Generator g = Generator::full);

CoefficientSet coefficients(double t, const BathParams& p, Generator g = Generator::full);

}  // namespace nmdyn
