#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nmdyn/sweep.hpp"

namespace {

using namespace nmdyn;

struct Common {
  std::string preset = "A";
  std::optional<double> omega0, lambda, gamma;
  double t_max = 10.0;
  std::size_t t_steps = 201;
  std::optional<double> rel_tol, abs_tol, max_step;
  bool uncapped = false;
  bool truncated_rwa = false;
  std::string out = "-";

  Preset make_preset() const {
    Preset p = preset_from_string(preset);
    if (omega0) p.params.omega0 = *omega0;
    if (lambda) p.params.lambda = *lambda;
    if (gamma) p.params.gamma = *gamma;
    p.params.validate();
    return p;
  }

  IntegratorSettings settings(const BathParams& bp) const {
    IntegratorSettings s = IntegratorSettings::for_bath(bp);
    if (rel_tol) s.rel_tol = *rel_tol;
    if (abs_tol) s.abs_tol = *abs_tol;
    if (max_step) s.max_step = *max_step;
    s.oscillation_cap = !uncapped;
    s.validate();
    return s;
  }

  Generator generator() const { return truncated_rwa ? Generator::truncated_rwa : Generator::full; }
};

void add_common(CLI::App* cmd, Common& c, bool with_preset = true) {
  if (with_preset) cmd->add_option("--preset", c.preset, "A, B, C or RWA")->capture_default_str();
  cmd->add_option("--omega0", c.omega0, "override the atomic frequency");
  cmd->add_option("--lambda", c.lambda, "override the coupling strength");
  cmd->add_option("--gamma", c.gamma, "override the reservoir width");
  cmd->add_option("--tmax", c.t_max, "final time in units of 1/gamma")->capture_default_str();
  cmd->add_option("--t-steps", c.t_steps, "number of time samples")->capture_default_str();
  cmd->add_option("--rel-tol", c.rel_tol, "integrator relative tolerance (default 1e-9)");
  cmd->add_option("--abs-tol", c.abs_tol, "integrator absolute tolerance (default 1e-9)");
  cmd->add_option("--max-step", c.max_step, "largest internal step (default 0.01/gamma)");
  cmd->add_flag("--uncapped", c.uncapped, "drop the pi/(8 omega0) step cap (debugging only)");
  cmd->add_flag("--truncated-rwa", c.truncated_rwa, "drop counter-rotating terms from the generator");
  cmd->add_option("--out,-o", c.out, "output file, '-' for stdout")->capture_default_str();
}

// Runs `write` against stdout or the file named by `path`.
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write(f);
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

struct SweepArgs {
  Common common;
  std::string state = "phi";
  std::optional<double> beta2;
  double phase = 0.0;
  std::size_t beta2_steps = 51;
  std::string nonphysical = "reject";
  bool seedless = false;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& a) {
  add_common(cmd, a.common);
  cmd->add_option("--state", a.state, "initial-state family: phi or psi")
      ->check(CLI::IsMember({"phi", "psi"}, CLI::ignore_case))
      ->capture_default_str();
  cmd->add_option("--beta2", a.beta2, "single beta^2 value instead of a grid");
  cmd->add_option("--phase", a.phase, "phase of eta in radians")->capture_default_str();
  cmd->add_option("--beta2-steps", a.beta2_steps, "number of beta^2 samples")->capture_default_str();
  cmd->add_option("--nonphysical", a.nonphysical, "non-positive states: reject (NaN) or clamp")
      ->check(CLI::IsMember({"reject", "clamp"}))
      ->capture_default_str();
  cmd->add_flag("--seedless", a.seedless, "accepted for compatibility; output is always deterministic");
}

SweepSpec make_spec(const SweepArgs& a) {
  SweepSpec spec;
  spec.preset = a.common.make_preset();
  spec.family = a.state == "psi" ? BellFamily::psi : BellFamily::phi;
  if (a.beta2) {
    if (!(*a.beta2 > 0.0 && *a.beta2 < 1.0)) throw DomainError("--beta2 must lie in (0, 1)");
    spec.beta2_min = spec.beta2_max = *a.beta2;
    spec.beta2_steps = 1;
  } else {
    spec.beta2_steps = a.beta2_steps;
  }
  spec.eta_phase = a.phase;
  spec.t_max = a.common.t_max;
  spec.t_steps = a.common.t_steps;
  spec.settings = a.common.settings(spec.preset.params);
  spec.generator = a.common.generator();
  spec.nonphysical = a.nonphysical == "clamp" ? NonPhysicalPolicy::clamp : NonPhysicalPolicy::reject;
  return spec;
}

ConcurrenceSurface run_sweep(const SweepArgs& a) {
  ConcurrenceSurface surf = sweep(make_spec(a));
  for (const auto& w : surf.warnings) std::cerr << "warning: " << w << '\n';
  return surf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit disentanglement in Lorentzian reservoirs beyond the rotating-wave approximation"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "concurrence over a (gamma t, beta^2) grid as CSV");
  add_sweep_options(sweep_cmd, sweep_args);

  SweepArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "death, revival and plateau summary per beta^2");
  add_sweep_options(report_cmd, report_args);

  Common trace_args;
  auto* trace_cmd = app.add_subcommand("trace", "disentangling and channel coefficients along one trajectory");
  add_common(trace_cmd, trace_args);

  Common verify_args;
  std::vector<std::string> verify_presets;
  std::size_t verify_beta2_steps = 51;
  auto* verify_cmd = app.add_subcommand("verify", "compare the channel pipeline against the oracles");
  add_common(verify_cmd, verify_args, false);
  verify_cmd->add_option("--preset", verify_presets, "presets to check (default A B C)");
  verify_cmd->add_option("--beta2-steps", verify_beta2_steps, "beta^2 samples per family")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep_cmd) {
      const ConcurrenceSurface surf = run_sweep(sweep_args);
      with_output(sweep_args.common.out, [&](std::ostream& os) { write_csv(surf, os); });
      return 0;
    }
    if (*report_cmd) {
      const ConcurrenceSurface surf = run_sweep(report_args);
      with_output(report_args.common.out, [&](std::ostream& os) { write_report(report(surf), os); });
      return 0;
    }
    if (*trace_cmd) {
      const Preset p = trace_args.make_preset();
      SweepSpec spec;
      spec.preset = p;
      spec.t_max = trace_args.t_max;
      spec.t_steps = trace_args.t_steps;
      spec.validate();
      const std::vector<double> grid = spec.time_grid();
      try {
        with_output(trace_args.out, [&](std::ostream& os) {
          write_trace(p, grid, trace_args.settings(p.params), trace_args.generator(), os);
        });
      } catch (const BlowupError& e) {
        std::cerr << "warning: " << e.what() << "; trace truncated at t=" << e.time() << '\n';
      }
      return 0;
    }
    if (*verify_cmd) {
      VerifyOptions opts;
      if (!verify_presets.empty()) {
        opts.presets.clear();
        for (const auto& name : verify_presets) {
          Common c = verify_args;
          c.preset = name;
          opts.presets.push_back(c.make_preset());
        }
      }
      // Settings are shared across presets; the step scale follows gamma.
      const BathParams ref = opts.presets.empty() ? preset(PresetName::A).params : opts.presets.front().params;
      opts.settings = verify_args.settings(ref);
      opts.t_max = verify_args.t_max;
      opts.t_steps = verify_args.t_steps;
      opts.beta2_steps = verify_beta2_steps;
      const std::vector<CheckResult> checks = verify(opts);
      with_output(verify_args.out, [&](std::ostream& os) { write_verify_report(checks, os); });
      bool ok = true;
      for (const auto& c : checks) {
        if (!c.note.empty()) std::cerr << c.name << ": " << c.note << '\n';
        ok = ok && c.pass;
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
