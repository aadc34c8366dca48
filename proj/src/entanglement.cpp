#include "nmdyn/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nmdyn {

namespace {

constexpr double kXStateTolerance = 1e-12;

// Smallest eigenvalue of the Hermitian 2x2 block [[a, z], [z*, b]].
double block_min_eigenvalue(double a, double b, double abs_z) {
  return 0.5 * (a + b) - std::hypot(0.5 * (a - b), abs_z);
}

// Replaces the block [[a, z], [z*, b]] by its nearest positive semidefinite
// matrix (negative eigenvalues set to zero). Only |z| is tracked.
void project_block(double& a, double& b, double& abs_z) {
  const double half_diff = 0.5 * (a - b);
  const double r = std::hypot(half_diff, abs_z);
  const double mean = 0.5 * (a + b);
  if (mean - r >= 0.0) return;
  const double top = mean + r;
  if (top <= 0.0 || r == 0.0) {
    a = b = abs_z = 0.0;
    return;
  }
  a = 0.5 * top * (1.0 + half_diff / r);
  b = 0.5 * top * (1.0 - half_diff / r);
  abs_z = 0.5 * top * abs_z / r;
}

void check_grid(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw GridError("times and values differ in length");
  if (times.size() < 3) throw GridError("need at least 3 samples, got " + std::to_string(times.size()));
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw GridError("sample times must be strictly ascending");
  }
}

}  // namespace

ConcurrenceResult concurrence_xstate(const JointDensity& rho, NonPhysicalPolicy policy) {
  if (!is_x_state(rho, kXStateTolerance)) throw ShapeError("concurrence_xstate requires an X-state");
  double d[4];
  for (int i = 0; i < 4; ++i) d[i] = rho(i, i).real();
  // Coherences of the Hermitian part, as in concurrence_general.
  double z23 = 0.5 * std::abs(rho(1, 2) + std::conj(rho(2, 1)));
  double z14 = 0.5 * std::abs(rho(0, 3) + std::conj(rho(3, 0)));

  if (policy == NonPhysicalPolicy::reject) {
    for (int i = 0; i < 4; ++i) {
      if (d[i] < -kPositivityTolerance) {
        throw NegativeDiagonalError("diagonal element " + std::to_string(i + 1) + " is " + std::to_string(d[i]));
      }
    }
    if (block_min_eigenvalue(d[1], d[2], z23) < -kPositivityTolerance ||
        block_min_eigenvalue(d[0], d[3], z14) < -kPositivityTolerance) {
      throw NonPhysicalStateError("X-state coherence exceeds its positivity bound");
    }
  }
  // The X-state eigenvectors live inside the two blocks, so this is the
  // projection onto the nearest positive semidefinite state.
  project_block(d[1], d[2], z23);
  project_block(d[0], d[3], z14);

  ConcurrenceResult r;
  r.c1 = 2.0 * (z23 - std::sqrt(d[0] * d[3]));
  r.c2 = 2.0 * (z14 - std::sqrt(d[1] * d[2]));
  r.value = std::max({0.0, r.c1, r.c2});
  return r;
}

double concurrence_general(const JointDensity& rho) {
  const Mat4 h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> eig(h);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const Eigen::Vector4d w = eig.eigenvalues();
  if (w[0] < -kPositivityTolerance) {
    throw NumericalError("state has negative eigenvalue " + std::to_string(w[0]));
  }
  Mat4 l = eig.eigenvectors();
  for (int k = 0; k < 4; ++k) l.col(k) *= std::sqrt(std::max(w[k], 0.0));

  // sy (x) sy in the {|11>, |10>, |01>, |00>} basis
  Mat4 flip = Mat4::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;

  const Mat4 tau = l.transpose() * flip * l;
  Eigen::JacobiSVD<Mat4> svd(tau);
  const Eigen::Vector4d s = svd.singularValues();  // descending
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

double EsdReport::max_revival_amplitude() const {
  double best = 0.0;
  for (const auto& e : episodes) best = std::max(best, e.peak);
  return best;
}

std::vector<RevivalEpisode> EsdReport::episodes_above(double amplitude) const {
  std::vector<RevivalEpisode> out;
  std::copy_if(episodes.begin(), episodes.end(), std::back_inserter(out),
               [&](const RevivalEpisode& e) { return e.peak >= amplitude; });
  return out;
}

EsdReport detect_esd(std::span<const double> times, std::span<const double> values, double threshold) {
  check_grid(times, values);
  if (!(threshold > 0.0)) throw DomainError("ESD threshold must be positive");

  EsdReport rep;
  std::optional<RevivalEpisode> open;
  bool last_above = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::isnan(v)) {
      ++rep.undefined_samples;
      continue;
    }
    const bool above = v > threshold;
    last_above = above;
    if (!rep.death_time) {
      if (!above) rep.death_time = times[i];
      continue;
    }
    if (above) {
      if (!open) open = RevivalEpisode{times[i], times[i], v, times[i]};
      open->end = times[i];
      if (v > open->peak) {
        open->peak = v;
        open->peak_time = times[i];
      }
    } else if (open) {
      rep.episodes.push_back(*open);
      open.reset();
    }
  }
  if (open) rep.episodes.push_back(*open);
  rep.permanently_dead = rep.death_time.has_value() && !last_above;
  return rep;
}

std::optional<Plateau> longest_plateau(std::span<const double> times, std::span<const double> values,
                                       double slope_bound, double floor) {
  check_grid(times, values);
  std::optional<Plateau> best;
  std::optional<std::size_t> run_start;
  auto close = [&](std::size_t end) {
    if (!run_start) return;
    Plateau pl{times[*run_start], times[end], 0.0};
    double sum = 0.0;
    for (std::size_t k = *run_start; k <= end; ++k) sum += values[k];
    pl.level = sum / static_cast<double>(end - *run_start + 1);
    if (!best || pl.length() > best->length()) best = pl;
    run_start.reset();
  };
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const double a = values[k], b = values[k + 1];
    const bool ok = !std::isnan(a) && !std::isnan(b) && a > floor && b > floor &&
                    std::abs((b - a) / (times[k + 1] - times[k])) < slope_bound;
    if (ok) {
      if (!run_start) run_start = k;
    } else {
      close(k);
    }
  }
  close(values.size() - 1);
  return best;
}

std::optional<Plateau> longest_zero_interval(std::span<const double> times, std::span<const double> values,
                                             double threshold) {
  check_grid(times, values);
  std::optional<Plateau> best;
  std::optional<std::size_t> run_start;
  auto close = [&](std::size_t last) {
    if (!run_start) return;
    Plateau pl{times[*run_start], times[last], 0.0};
    if (!best || pl.length() > best->length()) best = pl;
    run_start.reset();
  };
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool low = !std::isnan(values[i]) && values[i] <= threshold;
    if (low) {
      if (!run_start) run_start = i;
    } else if (run_start) {
      close(i - 1);
    }
  }
  if (run_start) close(values.size() - 1);
  return best;
}

}  // namespace nmdyn
