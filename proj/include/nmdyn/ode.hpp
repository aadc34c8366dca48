#pragma once

// Dormand-Prince 5(4) with Hairer's continuous extension, for small
// fixed-size complex systems. Samples are produced on a caller-supplied grid
// by dense output, so the step sequence does not depend on the grid spacing.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>

#include <Eigen/Core>

#include "nmdyn/error.hpp"

namespace nmdyn::ode {

template <int N>
using CVector = Eigen::Matrix<std::complex<double>, N, 1>;

struct StepControl {
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  double max_step = 0.01;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

namespace detail {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

template <int N>
double error_norm(const CVector<N>& err, const CVector<N>& y0, const CVector<N>& y1, const StepControl& c) {
  // Max norm over real and imaginary parts, each with its own scale.
  double worst = 0.0;
  auto add = [&](double e, double a, double b) {
    worst = std::max(worst, std::abs(e) / (c.abs_tol + c.rel_tol * std::max(std::abs(a), std::abs(b))));
  };
  for (int i = 0; i < err.size(); ++i) {
    add(err[i].real(), y0[i].real(), y1[i].real());
    add(err[i].imag(), y0[i].imag(), y1[i].imag());
  }
  return worst;
}

}  // namespace detail

/// Integrates y' = rhs(t, y) from grid.front() to grid.back().
///
/// `on_step(t, y)` runs after every accepted step and may throw to abort the
/// integration; `on_sample(i, y)` receives the dense-output value at grid[i].
/// The grid must be non-decreasing. Throws ToleranceError on step underflow.
template <int N, class Rhs, class Sample, class Step>
Stats dormand_prince(Rhs&& rhs, const CVector<N>& y0, std::span<const double> grid, const StepControl& ctl,
                     Sample&& on_sample, Step&& on_step) {
  using namespace detail;
  using V = CVector<N>;
  Stats st;
  if (grid.empty()) return st;

  double t = grid.front();
  const double t_end = grid.back();
  V y = y0;
  std::size_t next = 0;
  while (next < grid.size() && grid[next] <= t) on_sample(next++, y);
  if (next == grid.size()) return st;

  V k1 = rhs(t, y);
  ++st.rhs_evals;

  double h;
  {
    const double dy = k1.norm();
    const double yn = y.norm();
    h = (dy > 0.0 && yn > 1e-5) ? 0.01 * yn / dy : 1e-6;
    h = std::min({h, ctl.max_step, t_end - t});
  }

  while (t < t_end) {
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw ToleranceError("step size underflow at t=" + std::to_string(t), t);
    }
    bool last = false;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }

    const V k2 = rhs(t + c2 * h, V(y + h * a21 * k1));
    const V k3 = rhs(t + c3 * h, V(y + h * (a31 * k1 + a32 * k2)));
    const V k4 = rhs(t + c4 * h, V(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const V k5 = rhs(t + c5 * h, V(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const V k6 = rhs(t + h, V(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const V y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const V k7 = rhs(t + h, y1);
    st.rhs_evals += 6;

    const V err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm<N>(err, y, y1, ctl);

    if (!(en <= 1.0)) {
      ++st.rejected;
      const double shrink = std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.2;
      h *= shrink;
      continue;
    }
    ++st.accepted;

    const double t1 = last ? t_end : t + h;
    on_step(t1, y1);

    if (next < grid.size() && grid[next] <= t1) {
      const V ydiff = y1 - y;
      const V bspl = h * k1 - ydiff;
      const V r4 = ydiff - h * k7 - bspl;
      const V r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      while (next < grid.size() && grid[next] <= t1) {
        const double th = (grid[next] - t) / h;
        const double th1 = 1.0 - th;
        if (grid[next] == t1) {
          on_sample(next++, y1);
        } else {
          on_sample(next++, V(y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5)))));
        }
      }
    }

    t = t1;
    y = y1;
    k1 = k7;
    const double grow = en > 0.0 ? std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.2))) : 5.0;
    h = std::min(h * grow, ctl.max_step);
  }
  return st;
}

}  // namespace nmdyn::ode
