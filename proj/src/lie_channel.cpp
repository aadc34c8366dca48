#include "nmdyn/lie_channel.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>

#include "nmdyn/ode.hpp"

namespace nmdyn {

namespace {

std::atomic<std::size_t> g_integrations{0};

// log(DBL_MAX)
const double kMaxExponent = std::log(std::numeric_limits<double>::max());

using State = ode::CVector<6>;

DisentangleState unpack(const State& y, double t) {
  DisentangleState s;
  s.j_plus = y[0];
  s.j_0 = y[1];
  s.j_minus = y[2];
  s.k_plus = y[3].real();
  s.k_0 = y[4].real();
  s.k_minus = y[5].real();
  s.t = t;
  return s;
}

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw GridError("time grid is empty");
  if (t_grid.front() != 0.0) throw GridError("time grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= t_grid[i - 1])) throw GridError("time grid must be ascending");
  }
}

}  // namespace

void IntegratorSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("integrator tolerances must be positive");
  if (!(max_step > 0.0)) throw DomainError("max_step must be positive");
  if (!(blowup_threshold > 0.0)) throw DomainError("blowup_threshold must be positive");
}

IntegratorSettings IntegratorSettings::for_bath(const BathParams& p) {
  IntegratorSettings s;
  s.max_step = 0.01 / p.gamma;
  return s;
}

double IntegratorSettings::effective_max_step(const BathParams& p) const {
  if (!oscillation_cap) return max_step;
  return std::min(max_step, std::numbers::pi / (8.0 * p.omega0));
}

DisentangleRates riccati_rhs(const DisentangleState& s, const CoefficientSet& c) {
  DisentangleRates d;
  d.j_plus = c.eps_plus - c.eps_minus * s.j_plus * s.j_plus + c.eps0 * s.j_plus;
  d.j_0 = c.eps0 - 2.0 * c.eps_minus * s.j_plus;
  d.j_minus = c.eps_minus * std::exp(s.j_0);
  d.k_plus = c.nu_plus - c.nu_minus * s.k_plus * s.k_plus + c.nu0 * s.k_plus;
  d.k_0 = c.nu0 - 2.0 * c.nu_minus * s.k_plus;
  d.k_minus = c.nu_minus * std::exp(s.k_0);
  return d;
}

std::size_t integration_count() { return g_integrations.load(); }

std::vector<DisentangleState> integrate(const BathParams& p, std::span<const double> t_grid,
                                        const IntegratorSettings& s, Generator g) {
  p.validate();
  s.validate();
  check_grid(t_grid);
  ++g_integrations;

  auto rhs = [&](double t, const State& y) {
    const DisentangleRates d = riccati_rhs(unpack(y, t), coefficients(t, p, g));
    State out;
    out << d.j_plus, d.j_0, d.j_minus, d.k_plus, d.k_0, d.k_minus;
    return out;
  };

  std::vector<DisentangleState> out(t_grid.size());
  std::size_t filled = 0;
  auto on_sample = [&](std::size_t i, const State& y) {
    out[i] = unpack(y, t_grid[i]);
    filled = i + 1;
  };
  // Im(j0) is a pure phase that grows like 2 omega0 t; it is excluded from the
  // magnitude test.
  auto on_step = [&](double t, const State& y) {
    const double worst = std::max({std::abs(y[0]), std::abs(y[1].real()), std::abs(y[2]), std::abs(y[3]),
                                   std::abs(y[4]), std::abs(y[5])});
    if (!std::isfinite(worst) || !std::isfinite(y[1].imag()) || worst > s.blowup_threshold) {
      out.resize(filled);
      throw BlowupError("disentangling coefficient exceeded " + std::to_string(s.blowup_threshold) +
                            " at t=" + std::to_string(t),
                        t, std::move(out));
    }
  };

  ode::StepControl ctl{s.rel_tol, s.abs_tol, s.effective_max_step(p)};
  ode::dormand_prince<6>(rhs, State::Zero(), t_grid, ctl, on_sample, on_step);
  return out;
}

ChannelCoefficients channel_at(const DisentangleState& s, double gamma_k) {
  const double half_re_j0 = 0.5 * s.j_0.real();
  if (std::abs(half_re_j0) > kMaxExponent || std::abs(0.5 * s.k_0) > kMaxExponent) {
    throw OverflowError("propagator exponent out of range at t=" + std::to_string(s.t) +
                        " (Re j0=" + std::to_string(s.j_0.real()) + ", k0=" + std::to_string(s.k_0) + ")");
  }
  // e^{+-j0/2} split into magnitude and phase so that large Im(j0) stays a pure phase
  const cplx ej_up = std::polar(std::exp(half_re_j0), 0.5 * s.j_0.imag());
  const cplx ej_dn = std::polar(std::exp(-half_re_j0), -0.5 * s.j_0.imag());
  const double ek_up = std::exp(0.5 * s.k_0);
  const double ek_dn = std::exp(-0.5 * s.k_0);

  ChannelCoefficients c;
  c.l = ek_up + ek_dn * s.k_plus * s.k_minus;
  c.m = ek_dn * s.k_plus;
  c.n = ek_dn;
  c.p = ek_dn * s.k_minus;
  c.q = ej_dn;
  c.r = ej_dn * s.j_minus;
  c.x = ej_up + ej_dn * s.j_plus * s.j_minus;
  c.y = ej_dn * s.j_plus;
  c.gamma_k = gamma_k;
  return c;
}

std::vector<ChannelCoefficients> channel_trajectory(const BathParams& p, std::span<const double> t_grid,
                                                    const IntegratorSettings& s, Generator g) {
  const std::vector<DisentangleState> states = integrate(p, t_grid, s, g);
  std::vector<ChannelCoefficients> out;
  out.reserve(states.size());
  for (const auto& st : states) out.push_back(channel_at(st, decay_exponent(st.t, p, g)));
  return out;
}

Mat2 apply_channel(const ChannelCoefficients& c, const Mat2& rho0) {
  const double scale = std::exp(-c.gamma_k);
  const cplx r11 = rho0(0, 0), r10 = rho0(0, 1), r01 = rho0(1, 0), r00 = rho0(1, 1);
  Mat2 out;
  out(0, 0) = scale * (c.l * r11 + c.m * r00);
  out(0, 1) = scale * (c.x * r10 + c.y * r01);
  out(1, 0) = scale * (c.q * r01 + c.r * r10);
  out(1, 1) = scale * (c.n * r00 + c.p * r11);
  return out;
}

Mat4 transfer_matrix(const ChannelCoefficients& c) {
  Mat4 t = Mat4::Zero();
  t(0, 0) = c.l;
  t(0, 3) = c.m;
  t(3, 0) = c.p;
  t(3, 3) = c.n;
  t(1, 1) = c.x;
  t(1, 2) = c.y;
  t(2, 1) = c.r;
  t(2, 2) = c.q;
  return std::exp(-c.gamma_k) * t;
}

}  // namespace nmdyn
