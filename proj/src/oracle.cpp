#include "nmdyn/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

namespace nmdyn::oracle {

namespace {

namespace odeint = boost::numeric::odeint;
namespace quad = boost::math::quadrature;

// Basis index 0 = |1> (excited), 1 = |0> (ground).
const Mat2& sigma_z() {
  static const Mat2 m = (Mat2() << 1, 0, 0, -1).finished();
  return m;
}
const Mat2& sigma_plus() {
  static const Mat2 m = (Mat2() << 0, 1, 0, 0).finished();
  return m;
}
const Mat2& sigma_minus() {
  static const Mat2 m = (Mat2() << 0, 0, 1, 0).finished();
  return m;
}

// Piecewise Gauss-Kronrod over [0, t] with pieces no longer than `piece`.
// Pieces are short enough that one 61-point rule is at rounding level.
constexpr unsigned kDepth = 0;
template <class F>
double integrate_0_t(F&& f, double t, double piece) {
  if (t <= 0.0) return 0.0;
  const auto pieces = static_cast<std::size_t>(std::ceil(t / piece));
  const double h = t / static_cast<double>(pieces);
  double sum = 0.0;
  for (std::size_t k = 0; k < pieces; ++k) {
    const double a = h * static_cast<double>(k);
    const double b = (k + 1 == pieces) ? t : a + h;
    sum += quad::gauss_kronrod<double, 61>::integrate(f, a, b, kDepth, 1e-14);
  }
  return sum;
}

// Pieces short enough to resolve the 2 omega0 oscillation and the gamma decay.
double oscillation_piece(const BathParams& p) {
  return std::min(std::numbers::pi / (2.0 * p.omega0), 0.5 / p.gamma);
}

// int_{-inf}^{inf} J(w0 + x) e^{i sign x t} dx split into even/odd half-line
// Fourier integrals.
cplx lorentzian_fourier(double t, const BathParams& p, double sign) {
  auto g = [&](double x) { return spectral_density(p.omega0 + x, p); };
  if (t == 0.0) return {spectral_weight_by_quadrature(p), 0.0};
  quad::ooura_fourier_cos<double> cos_int(1e-13);
  quad::ooura_fourier_sin<double> sin_int(1e-13);
  const double c = cos_int.integrate([&](double x) { return g(x) + g(-x); }, t).first;
  const double s = sin_int.integrate([&](double x) { return g(x) - g(-x); }, t).first;
  return {c, sign * s};
}

}  // namespace

Mat2 super_j0(const Mat2& rho) { return 0.25 * (sigma_z() * rho - rho * sigma_z()); }
Mat2 super_jp(const Mat2& rho) { return sigma_plus() * rho * sigma_plus(); }
Mat2 super_jm(const Mat2& rho) { return sigma_minus() * rho * sigma_minus(); }
Mat2 super_k0(const Mat2& rho) {
  const Mat2 pe = sigma_plus() * sigma_minus();
  return 0.5 * (pe * rho + rho * pe - rho);
}
Mat2 super_kp(const Mat2& rho) { return sigma_plus() * rho * sigma_minus(); }
Mat2 super_km(const Mat2& rho) { return sigma_minus() * rho * sigma_plus(); }

Mat2 master_rhs(double t, const Mat2& rho, const BathParams& p, Generator g) {
  const CoefficientSet c = coefficients(t, p, g);
  return -scalar_damping(t, p, g) * rho + c.eps0 * super_j0(rho) + c.eps_plus * super_jp(rho) +
         c.eps_minus * super_jm(rho) + c.nu0 * super_k0(rho) + c.nu_plus * super_kp(rho) +
         c.nu_minus * super_km(rho);
}

std::vector<Mat2> integrate_master_direct(const BathParams& p, const Mat2& rho0, std::span<const double> t_grid,
                                          const IntegratorSettings& s, Generator g) {
  p.validate();
  s.validate();
  if (t_grid.empty()) return {};
  using state_type = std::array<double, 4>;

  auto to_matrix = [](const state_type& x) {
    Mat2 rho;
    rho << x[0], cplx(x[1], x[2]), cplx(x[1], -x[2]), x[3];
    return rho;
  };
  auto sys = [&](const state_type& x, state_type& dxdt, double t) {
    const Mat2 d = master_rhs(t, to_matrix(x), p, g);
    dxdt = {d(0, 0).real(), d(0, 1).real(), d(0, 1).imag(), d(1, 1).real()};
  };

  std::vector<Mat2> out;
  out.reserve(t_grid.size());
  auto observer = [&](const state_type& x, double) { out.push_back(to_matrix(x)); };

  state_type x{rho0(0, 0).real(), rho0(0, 1).real(), rho0(0, 1).imag(), rho0(1, 1).real()};
  const double max_step = s.effective_max_step(p);
  auto stepper = odeint::make_dense_output(s.abs_tol, s.rel_tol, max_step, odeint::runge_kutta_dopri5<state_type>());
  try {
    odeint::integrate_times(stepper, sys, x, t_grid.begin(), t_grid.end(), std::min(max_step, 1e-3), observer);
  } catch (const odeint::odeint_error& e) {
    throw ToleranceError(std::string("direct master-equation integration failed: ") + e.what(),
                         out.empty() ? 0.0 : t_grid[out.size() - 1]);
  }
  return out;
}

cplx rwa_amplitude(double t, const BathParams& p) {
  const double g = p.gamma;
  const double d2 = 2.0 * p.lambda * g - g * g;
  const double decay = std::exp(-0.5 * g * t);
  if (std::abs(d2) < 1e-12 * g * g) return decay * (1.0 + 0.5 * g * t);
  if (d2 > 0.0) {
    const double d = std::sqrt(d2);
    return decay * (std::cos(0.5 * d * t) + g / d * std::sin(0.5 * d * t));
  }
  const double k = std::sqrt(-d2);
  return decay * (std::cosh(0.5 * k * t) + g / k * std::sinh(0.5 * k * t));
}

ChannelCoefficients rwa_channel(double t, const BathParams& p) {
  const cplx a = rwa_amplitude(t, p);
  const double pop = std::norm(a);
  ChannelCoefficients c;
  c.l = pop;
  c.m = 0.0;
  c.n = 1.0;
  c.p = 1.0 - pop;
  c.x = a;
  c.y = 0.0;
  c.q = std::conj(a);
  c.r = 0.0;
  c.gamma_k = 0.0;
  return c;
}

double rwa_residual(const BathParams& p, std::span<const double> t_grid) {
  constexpr double h = 1e-3;
  auto q = [&](double s) { return rwa_amplitude(s, p).real(); };
  double worst = 0.0;
  for (double t : t_grid) {
    const double qdot = (-q(t + 2 * h) + 8 * q(t + h) - 8 * q(t - h) + q(t - 2 * h)) / (12 * h);
    const double memory = integrate_0_t([&](double s) { return alpha1(t - s, p).real() * q(s); }, t, 0.25 / p.gamma);
    worst = std::max(worst, std::abs(qdot + memory));
  }
  return worst;
}

double spectral_weight_by_quadrature(const BathParams& p) {
  quad::sinh_sinh<double> integrator;
  return integrator.integrate([&](double x) { return spectral_density(p.omega0 + x, p); }, 1e-14);
}

cplx alpha1_by_quadrature(double t, const BathParams& p) { return lorentzian_fourier(t, p, -1.0); }

cplx alpha2_by_quadrature(double t, const BathParams& p) {
  // e^{i(w + w0)t} = e^{2 i w0 t} e^{i(w - w0)t}
  return std::polar(1.0, 2.0 * p.omega0 * t) * lorentzian_fourier(t, p, 1.0);
}

cplx alpha_by_quadrature(double t, const BathParams& p) {
  const cplx z(p.gamma, 2.0 * p.omega0);
  const double piece = oscillation_piece(p);
  const double re = integrate_0_t([&](double s) { return std::exp(-z * s).real(); }, t, piece);
  const double im = integrate_0_t([&](double s) { return std::exp(-z * s).imag(); }, t, piece);
  return {re, im};
}

cplx alpha_tilde_by_quadrature(double t, const BathParams& p) {
  const double piece = oscillation_piece(p);
  const double re = integrate_0_t([&](double s) { return alpha(s, p).real(); }, t, piece);
  const double im = integrate_0_t([&](double s) { return alpha(s, p).imag(); }, t, piece);
  return {re, im};
}

double decay_exponent_by_quadrature(double t, const BathParams& p) {
  const double integral = integrate_0_t(
      [&](double s) { return p.gamma * alpha(s, p).real() + memory_f(s, p.gamma); }, t, oscillation_piece(p));
  return 0.5 * p.lambda * integral;
}

}  // namespace nmdyn::oracle
