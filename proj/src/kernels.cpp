#include "nmdyn/kernels.hpp"

#include <cmath>
#include <numbers>

#include "nmdyn/error.hpp"

namespace nmdyn {

void BathParams::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(omega0) || !ok(gamma) || !ok(lambda)) {
    throw DomainError("bath parameters must be finite and positive (omega0=" + std::to_string(omega0) +
                      ", gamma=" + std::to_string(gamma) + ", lambda=" + std::to_string(lambda) + ")");
  }
}

double spectral_density(double omega, const BathParams& p) {
  const double d = omega - p.omega0;
  return p.lambda * p.gamma * p.gamma / (2.0 * std::numbers::pi * (d * d + p.gamma * p.gamma));
}

cplx alpha1(double t, const BathParams& p) { return {0.5 * p.gamma * p.lambda * std::exp(-p.gamma * t), 0.0}; }

cplx alpha2(double t, const BathParams& p) {
  return 0.5 * p.gamma * p.lambda * std::exp(-p.gamma * t) * std::polar(1.0, 2.0 * p.omega0 * t);
}

cplx alpha(double t, const BathParams& p) {
  const double theta = 2.0 * p.omega0 * t;
  const double em1 = std::expm1(-p.gamma * t);
  const double s = std::sin(0.5 * theta);
  // 1 - e^{-gamma t} cos(theta), without cancellation near t = 0
  const double re = -em1 * std::cos(theta) + 2.0 * s * s;
  const double im = (1.0 + em1) * std::sin(theta);
  return cplx(re, im) / cplx(p.gamma, 2.0 * p.omega0);
}

cplx alpha_tilde(double t, const BathParams& p) {
  const double g = p.gamma;
  const double w = p.omega0;
  const double denom = 4.0 * w * w + g * g;
  const double decay = std::exp(-g * t);
  const double c = 1.0 - decay * std::cos(2.0 * w * t);
  const double s = decay * std::sin(2.0 * w * t);
  const double re = (g * t + ((4.0 * w * w - g * g) * c - 4.0 * w * g * s) / denom) / denom;
  const double im = (-2.0 * w * t + (4.0 * w * g * c + (4.0 * w * w - g * g) * s) / denom) / denom;
  return {re, im};
}

double memory_f(double t, double gamma) { return -std::expm1(-gamma * t); }

double memory_F(double t, double gamma) {
  const double x = gamma * t;
  if (x < 0.1) {
    // x + expm1(-x) = sum_{k>=2} (-x)^k / k!
    double term = 0.5 * x * x;
    double sum = term;
    for (int k = 3; k < 20; ++k) {
      term *= -x / k;
      sum += term;
    }
    return sum / gamma;
  }
  return (x + std::expm1(-x)) / gamma;
}

double scalar_damping(double t, const BathParams& p, Generator g) {
  const double f = memory_f(t, p.gamma);
  if (g == Generator::truncated_rwa) return 0.5 * p.lambda * f;
  return 0.5 * p.lambda * (p.gamma * alpha(t, p).real() + f);
}

double decay_exponent(double t, const BathParams& p, Generator g) {
  const double big_f = memory_F(t, p.gamma);
  if (g == Generator::truncated_rwa) return 0.5 * p.lambda * big_f;
  return 0.5 * p.lambda * (p.gamma * alpha_tilde(t, p).real() + big_f);
}

CoefficientSet coefficients(double t, const BathParams& p, Generator g) {
  const double f = memory_f(t, p.gamma);
  CoefficientSet c;
  c.nu_minus = p.lambda * f;
  if (g == Generator::truncated_rwa) {
    c.eps0 = cplx(0.0, -2.0 * p.omega0);
    c.nu0 = -p.lambda * f;
    return c;
  }
  const cplx a = alpha(t, p);
  c.eps0 = cplx(0.0, -(2.0 * p.omega0 - p.lambda * p.gamma * a.imag()));
  c.eps_plus = 0.5 * p.lambda * (p.gamma * a + f);
  c.eps_minus = 0.5 * p.lambda * (p.gamma * std::conj(a) + f);
  c.nu0 = p.lambda * (p.gamma * a.real() - f);
  c.nu_plus = p.lambda * p.gamma * a.real();
  return c;
}

}  // namespace nmdyn
