#include "nmdyn/sweep.hpp"

#include "nmdyn/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

namespace nmdyn {

namespace {

constexpr double kBeta2Clip = 1e-4;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace

std::string Preset::label() const {
  switch (name) {
    case PresetName::A:
      return "A";
    case PresetName::B:
      return "B";
    case PresetName::C:
      return "C";
    case PresetName::RWA:
      return "RWA";
  }
  return "?";
}

Preset preset(PresetName name) {
  switch (name) {
    case PresetName::A:
      return {name, {100.0, 1.0, 10.0}, "w0 = 10 lambda, lambda = 10 gamma (w0 > lambda, w0 >> gamma)"};
    case PresetName::B:
      return {name, {10.0, 1.0, 10.0}, "w0 = lambda = 10 gamma"};
    case PresetName::C:
      return {name, {3.0, 1.0, 10.0}, "w0 = 3 gamma, lambda = 10 gamma (w0 < lambda)"};
    case PresetName::RWA:
      return {name, {100.0, 1.0, 10.0}, "rotating-wave reference model, lambda = 10 gamma"};
  }
  throw DomainError("unknown preset");
}

Preset preset_from_string(const std::string& name) {
  std::string up;
  std::transform(name.begin(), name.end(), std::back_inserter(up), [](unsigned char c) { return std::toupper(c); });
  if (up == "A") return preset(PresetName::A);
  if (up == "B") return preset(PresetName::B);
  if (up == "C") return preset(PresetName::C);
  if (up == "RWA") return preset(PresetName::RWA);
  throw DomainError("unknown preset '" + name + "' (expected A, B, C or RWA)");
}

std::vector<Preset> non_rwa_presets() {
  return {preset(PresetName::A), preset(PresetName::B), preset(PresetName::C)};
}

void SweepSpec::validate() const {
  preset.params.validate();
  settings.validate();
  if (beta2_steps == 0 || t_steps == 0) throw GridError("grids must be nonempty");
  if (!(beta2_min <= beta2_max)) throw GridError("beta2 grid must be ascending");
  if (!(t_max >= 0.0) || (t_steps > 1 && !(t_max > 0.0))) throw GridError("t_max must be positive");
}

std::vector<double> SweepSpec::time_grid() const {
  std::vector<double> g = linspace(0.0, t_max, t_steps);
  for (double& t : g) t /= preset.params.gamma;
  return g;
}

std::vector<double> SweepSpec::beta2_grid() const {
  std::vector<double> g = linspace(beta2_min, beta2_max, beta2_steps);
  for (double& b : g) b = std::clamp(b, kBeta2Clip, 1.0 - kBeta2Clip);
  return g;
}

std::vector<double> ConcurrenceSurface::column(std::size_t ib) const {
  std::vector<double> out(gamma_t.size());
  for (std::size_t it = 0; it < gamma_t.size(); ++it) out[it] = at(it, ib);
  return out;
}

std::vector<std::optional<ChannelCoefficients>> channel_series(const Preset& preset, std::span<const double> t_grid,
                                                               const IntegratorSettings& s, Generator g,
                                                               std::vector<std::string>& warnings) {
  std::vector<std::optional<ChannelCoefficients>> out(t_grid.size());
  if (preset.is_rwa()) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) out[i] = oracle::rwa_channel(t_grid[i], preset.params);
    return out;
  }
  std::vector<DisentangleState> states;
  try {
    states = integrate(preset.params, t_grid, s, g);
  } catch (const BlowupError& e) {
    warnings.push_back(std::string(e.what()) + "; later grid points excluded");
    states = e.partial();
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    try {
      out[i] = channel_at(states[i], decay_exponent(states[i].t, preset.params, g));
    } catch (const OverflowError& e) {
      warnings.push_back(e.what());
      break;
    }
  }
  return out;
}

ConcurrenceSurface sweep(const SweepSpec& spec) {
  spec.validate();
  ConcurrenceSurface surf;
  const std::vector<double> times = spec.time_grid();
  surf.beta2 = spec.beta2_grid();
  surf.gamma_t.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) surf.gamma_t[i] = times[i] * spec.preset.params.gamma;

  std::vector<JointDensity> initial;
  initial.reserve(surf.beta2.size());
  for (double b2 : surf.beta2) {
    initial.push_back(initial_state(BellFamilyState::from_beta2(spec.family, b2, spec.eta_phase)));
  }

  const auto channels = channel_series(spec.preset, times, spec.settings, spec.generator, surf.warnings);

  surf.values.assign(times.size() * surf.beta2.size(), kNaN);
  std::size_t rejected = 0;
  double first_rejected = kNaN;
  for (std::size_t it = 0; it < times.size(); ++it) {
    if (!channels[it]) continue;
    for (std::size_t ib = 0; ib < surf.beta2.size(); ++ib) {
      const JointDensity rho = evolve_pair(*channels[it], initial[ib]);
      try {
        surf.values[it * surf.beta2.size() + ib] = concurrence_xstate(rho, spec.nonphysical).value;
      } catch (const NonPhysicalStateError&) {
        if (rejected++ == 0) first_rejected = surf.gamma_t[it];
      }
    }
  }
  if (rejected > 0) {
    surf.warnings.push_back(std::to_string(rejected) +
                            " grid points have non-positive two-qubit states (first at gamma_t=" +
                            format_double(first_rejected) + "); concurrence recorded as NaN");
  }
  return surf;
}

void write_csv(const ConcurrenceSurface& surface, std::ostream& out) {
  out << "gamma_t,beta2,concurrence\n";
  for (std::size_t it = 0; it < surface.gamma_t.size(); ++it) {
    for (std::size_t ib = 0; ib < surface.beta2.size(); ++ib) {
      out << format_double(surface.gamma_t[it]) << ',' << format_double(surface.beta2[ib]) << ','
          << format_double(surface.at(it, ib)) << '\n';
    }
  }
}

void write_csv(const ConcurrenceSurface& surface, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write_csv(surface, f);
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::vector<ReportRow> report(const ConcurrenceSurface& surface) {
  std::vector<ReportRow> rows;
  for (std::size_t ib = 0; ib < surface.beta2.size(); ++ib) {
    const std::vector<double> col = surface.column(ib);
    ReportRow row;
    row.beta2 = surface.beta2[ib];
    row.esd = detect_esd(surface.gamma_t, col, kDeathThreshold);

    double peak = 0.0;
    for (double v : col)
      if (!std::isnan(v)) peak = std::max(peak, v);
    std::size_t prefix = col.size();
    if (row.esd.death_time) {
      const auto it = std::find(surface.gamma_t.begin(), surface.gamma_t.end(), *row.esd.death_time);
      prefix = static_cast<std::size_t>(it - surface.gamma_t.begin()) + 1;
    }
    if (prefix >= 3) {
      row.plateau = longest_plateau(std::span(surface.gamma_t).first(prefix), std::span(col).first(prefix),
                                    0.01 * peak, kDeathThreshold);
    }
    row.zero_interval = longest_zero_interval(surface.gamma_t, col, kDeathThreshold);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_report(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "beta2\tdeath_gamma_t\trevivals\trevivals_ge_" << format_double(kRevivalAmplitude)
      << "\tmax_revival\tpermanent_death\tplateau_start\tplateau_end\tplateau_level\tzero_start\tzero_end"
         "\tundefined_samples\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("-"); };
  for (const auto& r : rows) {
    out << format_double(r.beta2) << '\t' << opt(r.esd.death_time) << '\t' << r.esd.episodes.size() << '\t'
        << r.esd.episodes_above(kRevivalAmplitude).size() << '\t' << format_double(r.esd.max_revival_amplitude())
        << '\t' << (r.esd.permanently_dead ? "yes" : "no") << '\t'
        << opt(r.plateau ? std::optional(r.plateau->start) : std::nullopt) << '\t'
        << opt(r.plateau ? std::optional(r.plateau->end) : std::nullopt) << '\t'
        << opt(r.plateau ? std::optional(r.plateau->level) : std::nullopt) << '\t'
        << opt(r.zero_interval ? std::optional(r.zero_interval->start) : std::nullopt) << '\t'
        << opt(r.zero_interval ? std::optional(r.zero_interval->end) : std::nullopt) << '\t'
        << r.esd.undefined_samples << '\n';
  }
}

void write_trace(const Preset& preset, std::span<const double> t_grid, const IntegratorSettings& s, Generator g,
                 std::ostream& out) {
  out << "t,gamma_k,j_plus_re,j_plus_im,j0_re,j0_im,j_minus_re,j_minus_im,k_plus,k0,k_minus,"
         "l,m,n,p,q_re,q_im,r_re,r_im,x_re,x_im,y_re,y_im\n";
  auto row = [&](double t, const DisentangleState* st, const ChannelCoefficients& c) {
    auto f = [](double v) { return format_double(v); };
    const DisentangleState z{cplx(kNaN, kNaN), cplx(kNaN, kNaN), cplx(kNaN, kNaN), kNaN, kNaN, kNaN, t};
    const DisentangleState& d = st ? *st : z;
    out << f(t) << ',' << f(c.gamma_k) << ',' << f(d.j_plus.real()) << ',' << f(d.j_plus.imag()) << ','
        << f(d.j_0.real()) << ',' << f(d.j_0.imag()) << ',' << f(d.j_minus.real()) << ',' << f(d.j_minus.imag())
        << ',' << f(d.k_plus) << ',' << f(d.k_0) << ',' << f(d.k_minus) << ',' << f(c.l) << ',' << f(c.m) << ','
        << f(c.n) << ',' << f(c.p) << ',' << f(c.q.real()) << ',' << f(c.q.imag()) << ',' << f(c.r.real()) << ','
        << f(c.r.imag()) << ',' << f(c.x.real()) << ',' << f(c.x.imag()) << ',' << f(c.y.real()) << ','
        << f(c.y.imag()) << '\n';
  };
  if (preset.is_rwa()) {
    for (double t : t_grid) row(t, nullptr, oracle::rwa_channel(t, preset.params));
    return;
  }
  auto emit = [&](const std::vector<DisentangleState>& states) {
    for (const auto& st : states) row(st.t, &st, channel_at(st, decay_exponent(st.t, preset.params, g)));
  };
  try {
    emit(integrate(preset.params, t_grid, s, g));
  } catch (const BlowupError& e) {
    emit(e.partial());
    throw;
  }
}

}  // namespace nmdyn
