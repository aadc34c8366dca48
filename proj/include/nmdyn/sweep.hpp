#pragma once

// Parameter presets, (gamma t, beta^2) concurrence sweeps, CSV output, the
// oracle verification suite and ESD/revival reports used by the CLI.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nmdyn/entanglement.hpp"
#include "nmdyn/two_qubit.hpp"

namespace nmdyn {

enum class PresetName { A, B, C, RWA };

struct Preset {
  PresetName name = PresetName::A;
  BathParams params;
  std::string description;

  bool is_rwa() const { return name == PresetName::RWA; }
  std::string label() const;
};

/// A: w0 = 100, B: w0 = 10, C: w0 = 3, all with lambda = 10, gamma = 1.
/// RWA: lambda = 10, gamma = 1 (w0 only nominal).
Preset preset(PresetName name);
/// Case-insensitive "A", "B", "C" or "RWA". Throws DomainError otherwise.
Preset preset_from_string(const std::string& name);
std::vector<Preset> non_rwa_presets();

struct SweepSpec {
  Preset preset = nmdyn::preset(PresetName::A);
  BellFamily family = BellFamily::phi;
  double beta2_min = 1e-4;
  double beta2_max = 1.0 - 1e-4;
  std::size_t beta2_steps = 51;
  double eta_phase = 0.0;
  double t_max = 10.0;  ///< in units of 1/gamma
  std::size_t t_steps = 201;
  IntegratorSettings settings;
  Generator generator = Generator::full;
  NonPhysicalPolicy nonphysical = NonPhysicalPolicy::reject;

  /// Throws DomainError / GridError for empty or inverted grids.
  void validate() const;
  std::vector<double> time_grid() const;   ///< physical times t = (gamma t) / gamma
  std::vector<double> beta2_grid() const;  ///< clipped to [1e-4, 1 - 1e-4]
};

struct ConcurrenceSurface {
  std::vector<double> gamma_t;
  std::vector<double> beta2;
  std::vector<double> values;  ///< row-major, time outer; NaN where undefined
  std::vector<std::string> warnings;

  double at(std::size_t it, std::size_t ib) const { return values[it * beta2.size() + ib]; }
  /// Time slice for one beta^2 column.
  std::vector<double> column(std::size_t ib) const;
};

/// Channel coefficients for every time sample. Entries after a disentangling
/// blowup are empty and the failure is appended to `warnings`.
std::vector<std::optional<ChannelCoefficients>> channel_series(const Preset& preset, std::span<const double> t_grid,
                                                               const IntegratorSettings& s, Generator g,
                                                               std::vector<std::string>& warnings);

/// One integration per call; the channel is reused across all beta^2 values.
ConcurrenceSurface sweep(const SweepSpec& spec);

/// Header `gamma_t,beta2,concurrence`, 17 significant digits, `NaN` for
/// undefined points.
void write_csv(const ConcurrenceSurface& surface, std::ostream& out);
/// Throws IoError if the file cannot be written.
void write_csv(const ConcurrenceSurface& surface, const std::string& path);

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;  ///< error text when the check threw
};

struct VerifyOptions {
  std::vector<Preset> presets = non_rwa_presets();
  IntegratorSettings settings;
  double t_max = 10.0;
  std::size_t t_steps = 201;
  /// Number of beta^2 samples per family in the two-qubit checks.
  std::size_t beta2_steps = 51;
};

/// Runs the oracle comparisons. Never throws; failures become FAIL entries.
std::vector<CheckResult> verify(const VerifyOptions& opts);

/// `name<TAB>deviation<TAB>bound<TAB>PASS|FAIL`, one per line.
void write_verify_report(const std::vector<CheckResult>& checks, std::ostream& out);

struct ReportRow {
  double beta2 = 0.0;
  EsdReport esd;
  std::optional<Plateau> plateau;        ///< nonzero plateau before death
  std::optional<Plateau> zero_interval;  ///< longest interval with C below threshold
};

inline constexpr double kDeathThreshold = 1e-6;
inline constexpr double kRevivalAmplitude = 0.01;

/// ESD / revival summary per beta^2 column of a surface. The plateau is the
/// longest run with |dC/dt| < 0.01 max C while C is above the death threshold.
std::vector<ReportRow> report(const ConcurrenceSurface& surface);
void write_report(const std::vector<ReportRow>& rows, std::ostream& out);

/// Time series of disentangling and channel coefficients as CSV.
void write_trace(const Preset& preset, std::span<const double> t_grid, const IntegratorSettings& s, Generator g,
                 std::ostream& out);

}  // namespace nmdyn
