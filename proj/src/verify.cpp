#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "nmdyn/oracle.hpp"
#include "nmdyn/sweep.hpp"

namespace nmdyn {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Single-qubit inputs for the oracle comparison.
std::vector<Mat2> probe_states() {
  std::vector<Mat2> out;
  Mat2 excited = Mat2::Zero();
  excited(0, 0) = 1.0;
  Mat2 ground = Mat2::Zero();
  ground(1, 1) = 1.0;
  Mat2 plus = Mat2::Constant(0.5);
  Mat2 generic;
  generic << 0.3, cplx(0.2, 0.35), cplx(0.2, -0.35), 0.7;
  return {excited, ground, plus, generic};
}

std::vector<double> grid(double t_max, std::size_t steps, double gamma) {
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    g[i] = (steps == 1 ? 0.0 : t_max * static_cast<double>(i) / static_cast<double>(steps - 1)) / gamma;
  }
  return g;
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

CheckResult run_check(const std::string& name, double bound, const std::function<double(std::string&)>& body) {
  CheckResult r{name, kInf, bound, false, {}};
  try {
    r.deviation = body(r.note);
    r.pass = r.deviation < bound;
  } catch (const std::exception& e) {
    r.note = e.what();
  }
  return r;
}

// All Bell-family initial states used by the two-qubit checks.
std::vector<JointDensity> family_states(std::size_t beta2_steps) {
  std::vector<JointDensity> out;
  for (BellFamily fam : {BellFamily::phi, BellFamily::psi}) {
    for (std::size_t i = 0; i < beta2_steps; ++i) {
      const double b2 = beta2_steps == 1 ? 0.5
                                         : 1e-4 + (1.0 - 2e-4) * static_cast<double>(i) /
                                                      static_cast<double>(beta2_steps - 1);
      out.push_back(initial_state(BellFamilyState::from_beta2(fam, b2)));
    }
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify(const VerifyOptions& opts) {
  std::vector<CheckResult> checks;
  const double tight = 10.0 * opts.settings.rel_tol;

  for (const Preset& pr : opts.presets) {
    if (pr.is_rwa()) continue;
    const std::string tag = "[" + pr.label() + "]";
    const BathParams& bp = pr.params;
    const std::vector<double> ts = grid(opts.t_max, opts.t_steps, bp.gamma);

    std::vector<ChannelCoefficients> channels;
    std::string channel_error;
    try {
      channels = channel_trajectory(bp, ts, opts.settings);
    } catch (const std::exception& e) {
      channel_error = e.what();
    }
    auto need_channels = [&] {
      if (!channel_error.empty()) throw Error(channel_error);
    };

    checks.push_back(run_check("direct_vs_disentangled" + tag, 1e-6, [&](std::string&) {
      need_channels();
      double worst = 0.0;
      for (const Mat2& rho0 : probe_states()) {
        const std::vector<Mat2> direct = oracle::integrate_master_direct(bp, rho0, ts, opts.settings);
        for (std::size_t i = 0; i < ts.size(); ++i) {
          worst = std::max(worst, max_abs(apply_channel(channels[i], rho0) - direct[i]));
        }
      }
      return worst;
    }));

    checks.push_back(run_check("single_qubit_trace" + tag, tight, [&](std::string&) {
      need_channels();
      double worst = 0.0;
      for (const Mat2& rho0 : probe_states())
        for (const auto& c : channels) worst = std::max(worst, std::abs(apply_channel(c, rho0).trace() - 1.0));
      return worst;
    }));

    checks.push_back(run_check("single_qubit_hermiticity" + tag, tight, [&](std::string&) {
      need_channels();
      double worst = 0.0;
      for (const Mat2& rho0 : probe_states())
        for (const auto& c : channels) {
          const Mat2 out = apply_channel(c, rho0);
          worst = std::max(worst, max_abs(out - out.adjoint()));
        }
      return worst;
    }));

    const std::vector<JointDensity> initial = family_states(opts.beta2_steps);

    checks.push_back(run_check("two_qubit_trace" + tag, 1e-6, [&](std::string&) {
      need_channels();
      double worst = 0.0;
      for (const auto& c : channels)
        for (const auto& rho0 : initial) worst = std::max(worst, std::abs(evolve_pair(c, rho0).trace() - 1.0));
      return worst;
    }));

    checks.push_back(run_check("two_qubit_hermiticity" + tag, 1e-6, [&](std::string&) {
      need_channels();
      double worst = 0.0;
      for (const auto& c : channels)
        for (const auto& rho0 : initial) {
          const Mat4 out = evolve_pair(c, rho0);
          worst = std::max(worst, max_abs(out - out.adjoint()));
        }
      return worst;
    }));

    checks.push_back(run_check("two_qubit_dual_path" + tag, 1e-12, [&](std::string&) {
      need_channels();
      double worst = 0.0;
      for (const auto& c : channels)
        for (const auto& rho0 : initial) {
          const Mat4 tensor = evolve_pair(c, rho0);
          Mat4 diff = explicit_elements(c, rho0) - tensor;
          // printed rho22 carries l*m where the tensor product gives l*n
          diff(1, 1) -= std::exp(-2.0 * c.gamma_k) * (c.l * c.m - c.l * c.n) * rho0(1, 1);
          worst = std::max(worst, max_abs(diff));
        }
      return worst;
    }));

    checks.push_back(run_check("concurrence_dual_path" + tag, 1e-10, [&](std::string& note) {
      need_channels();
      double worst = 0.0;
      std::size_t rejected = 0;
      for (const auto& c : channels)
        for (const auto& rho0 : initial) {
          const Mat4 rho = evolve_pair(c, rho0);
          std::optional<double> closed, general;
          try {
            closed = concurrence_xstate(rho).value;
          } catch (const NonPhysicalStateError&) {
          }
          try {
            general = concurrence_general(rho);
          } catch (const NumericalError&) {
          }
          if (closed.has_value() != general.has_value()) return kInf;
          if (closed) {
            worst = std::max(worst, std::abs(*closed - *general));
          } else {
            ++rejected;
          }
        }
      note = std::to_string(rejected) + " non-positive states rejected by both routes";
      return worst;
    }));

    const std::vector<double> long_ts = grid(20.0, 81, bp.gamma);
    checks.push_back(run_check("kernel_alpha_tilde" + tag, 1e-8, [&](std::string&) {
      double worst = 0.0;
      for (double t : long_ts)
        worst = std::max(worst, std::abs(alpha_tilde(t, bp) - oracle::alpha_tilde_by_quadrature(t, bp)));
      return worst;
    }));
    checks.push_back(run_check("kernel_decay_exponent" + tag, 1e-8, [&](std::string&) {
      double worst = 0.0;
      for (double t : long_ts)
        worst = std::max(worst, std::abs(decay_exponent(t, bp) - oracle::decay_exponent_by_quadrature(t, bp)));
      return worst;
    }));
    checks.push_back(run_check("kernel_correlations" + tag, 1e-6, [&](std::string&) {
      double worst = 0.0;
      for (double t : {0.0, 0.1, 0.3, 0.5, 1.0, 2.0}) {
        const double tt = t / bp.gamma;
        worst = std::max(worst, std::abs(alpha1(tt, bp) - oracle::alpha1_by_quadrature(tt, bp)));
        worst = std::max(worst, std::abs(alpha2(tt, bp) - oracle::alpha2_by_quadrature(tt, bp)));
      }
      return worst;
    }));
  }

  const BathParams rwa = preset(PresetName::RWA).params;
  checks.push_back(run_check("rwa_residual", 1e-6, [&](std::string&) {
    return oracle::rwa_residual(rwa, grid(opts.t_max, opts.t_steps, rwa.gamma));
  }));

  checks.push_back(run_check("initial_concurrence", 1e-12, [&](std::string&) {
    double worst = 0.0;
    for (BellFamily fam : {BellFamily::phi, BellFamily::psi})
      for (double b2 : {0.1, 0.25, 0.5, 0.75, 0.9})
        for (double phase : {0.0, 1.0, 2.5}) {
          const JointDensity rho = initial_state(BellFamilyState::from_beta2(fam, b2, phase));
          worst = std::max(worst, std::abs(concurrence_xstate(rho).value - 2.0 * std::sqrt(b2 * (1.0 - b2))));
        }
    return worst;
  }));

  return checks;
}

void write_verify_report(const std::vector<CheckResult>& checks, std::ostream& out) {
  char buf[64];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof(buf), "%.3e\t%.3e", c.deviation, c.bound);
    out << c.name << '\t' << buf << '\t' << (c.pass ? "PASS" : "FAIL") << '\n';
  }
}

}  // namespace nmdyn
