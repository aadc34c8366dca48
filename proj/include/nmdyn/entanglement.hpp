#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nmdyn/two_qubit.hpp"

namespace nmdyn {

/// Eigenvalue (or diagonal) slack below zero that is still accepted as a
/// positive semidefinite state.
inline constexpr double kPositivityTolerance = 1e-9;

/// How concurrence_xstate treats matrices that are not positive semidefinite.
enum class NonPhysicalPolicy {
  reject,  ///< throw NegativeDiagonalError / NonPhysicalStateError
  clamp,   ///< evaluate on the nearest positive semidefinite state, whatever the violation
};

struct ConcurrenceResult {
  double value = 0.0;  ///< max{0, c1, c2}
  double c1 = 0.0;     ///< 2(|rho23| - sqrt(rho11 rho44))
  double c2 = 0.0;     ///< 2(|rho14| - sqrt(rho22 rho33))
};

/// Concurrence of an X-state from its two branches. `rho` is the physical
/// matrix, so no additional e^{-2 Gamma_k} factor is applied. Negative
/// eigenvalues within kPositivityTolerance are projected away first, the same
/// way concurrence_general treats them. Both routes work on the Hermitian part
/// of `rho`.
ConcurrenceResult concurrence_xstate(const JointDensity& rho, NonPhysicalPolicy policy = NonPhysicalPolicy::reject);

/// Wootters concurrence max{0, s1 - s2 - s3 - s4} for any two-qubit state.
/// s_i are the square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy),
/// computed as singular values of tau = L^T (sy x sy) L with rho = L L^dagger.
/// Throws NumericalError if rho has an eigenvalue below -kPositivityTolerance.
double concurrence_general(const JointDensity& rho);

struct RevivalEpisode {
  double start = 0.0;  ///< first sample above threshold
  double end = 0.0;    ///< last sample above threshold
  double peak = 0.0;
  double peak_time = 0.0;
};

struct EsdReport {
  std::optional<double> death_time;  ///< first sample below threshold
  std::vector<RevivalEpisode> episodes;
  std::size_t undefined_samples = 0;  ///< NaN samples, skipped
  /// Died and the last defined sample is still below threshold.
  bool permanently_dead = false;

  bool revived() const { return !episodes.empty(); }
  double max_revival_amplitude() const;
  /// Episodes whose peak is at least `amplitude`.
  std::vector<RevivalEpisode> episodes_above(double amplitude) const;
};

/// Scans a sampled concurrence sequence for the first death and subsequent
/// revival episodes (maximal runs above `threshold`). NaN samples are skipped.
/// Throws GridError for fewer than 3 samples or a non-ascending grid.
EsdReport detect_esd(std::span<const double> times, std::span<const double> values, double threshold = 1e-6);

struct Plateau {
  double start = 0.0;
  double end = 0.0;
  double length() const { return end - start; }
  double level = 0.0;  ///< mean value over the interval
};

/// Longest run of consecutive sample intervals with |dC/dt| < slope_bound
/// while C stays above `floor`. Intervals touching NaN samples break a run.
std::optional<Plateau> longest_plateau(std::span<const double> times, std::span<const double> values,
                                       double slope_bound, double floor);

/// Longest run of samples at or below `threshold` (NaN breaks the run).
std::optional<Plateau> longest_zero_interval(std::span<const double> times, std::span<const double> values,
                                             double threshold);

}  // namespace nmdyn
