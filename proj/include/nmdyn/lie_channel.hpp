#pragma once

// Exact single-qubit propagator from the disentangled form of the two
// time-ordered exponentials: e^{j+ J+} e^{j0 J0} e^{j- J-} acting on the
// coherences and e^{k+ K+} e^{k0 K0} e^{k- K-} acting on the populations,
// times the scalar factor e^{-Gamma_k}.
//
// Density matrices are stored with index 0 = excited |1>, index 1 = ground |0>,
// so rho(0,1) is rho_10 and rho(1,0) is rho_01.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "nmdyn/error.hpp"
#include "nmdyn/kernels.hpp"

namespace nmdyn {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

/// Disentangling coefficients at time t. The k-triple is real because the
/// population-sector coefficients nu are real.
struct DisentangleState {
  cplx j_plus;
  cplx j_0;
  cplx j_minus;
  double k_plus = 0.0;
  double k_0 = 0.0;
  double k_minus = 0.0;
  double t = 0.0;
};

/// Time derivative of a DisentangleState.
struct DisentangleRates {
  cplx j_plus;
  cplx j_0;
  cplx j_minus;
  double k_plus = 0.0;
  double k_0 = 0.0;
  double k_minus = 0.0;
};

/// Propagator entries. Populations: rho11 <- l rho11 + m rho00,
/// rho00 <- n rho00 + p rho11. Coherences: rho10 <- x rho10 + y rho01,
/// rho01 <- q rho01 + r rho10. Everything is multiplied by e^{-gamma_k}.
struct ChannelCoefficients {
  double l = 1.0;
  double m = 0.0;
  double n = 1.0;
  double p = 0.0;
  cplx q{1.0, 0.0};
  cplx r;
  cplx x{1.0, 0.0};
  cplx y;
  double gamma_k = 0.0;

  static ChannelCoefficients identity() { return {}; }
};

struct IntegratorSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  double max_step = 0.01;  ///< in time units; see for_bath()
  double blowup_threshold = 1e8;
  /// Cap each step at pi/(8 omega0) to resolve the 2 omega0 oscillation.
  /// Only disabled for negative-control runs.
  bool oscillation_cap = true;

  void validate() const;
  /// Defaults with max_step = 0.01 / gamma.
  static IntegratorSettings for_bath(const BathParams& p);
  /// max_step combined with the oscillation cap for these parameters.
  double effective_max_step(const BathParams& p) const;
};

/// The disentangling hit a singularity: some coefficient exceeded the blowup
/// threshold (or became non-finite) at `time()`. `partial()` holds the grid
/// samples computed before the failure.
class BlowupError : public Error {
 public:
  BlowupError(const std::string& what, double time, std::vector<DisentangleState> partial)
      : Error(what), time_(time), partial_(std::move(partial)) {}
  double time() const noexcept { return time_; }
  const std::vector<DisentangleState>& partial() const noexcept { return partial_; }

 private:
  double time_;
  std::vector<DisentangleState> partial_;
};

/// Riccati right-hand side, X+' = mu+ - mu- X+^2 + mu0 X+, X0' = mu0 - 2 mu- X+,
/// X-' = mu- e^{X0}, with mu = eps for the j-triple and mu = nu for the k-triple.
DisentangleRates riccati_rhs(const DisentangleState& s, const CoefficientSet& c);

/// Integrates the Riccati systems from the zero state and samples them on
/// `t_grid` (must start at 0 and be non-decreasing).
/// Throws BlowupError, ToleranceError, GridError.
std::vector<DisentangleState> integrate(const BathParams& p, std::span<const double> t_grid,
                                        const IntegratorSettings& s, Generator g = Generator::full);

/// Number of calls to integrate() made by this process.
std::size_t integration_count();

/// Throws OverflowError if |Re j0|/2 or |k0|/2 leaves the double exponent range.
ChannelCoefficients channel_at(const DisentangleState& s, double gamma_k);

/// integrate() followed by channel_at() with the closed-form decay exponent.
std::vector<ChannelCoefficients> channel_trajectory(const BathParams& p, std::span<const double> t_grid,
                                                    const IntegratorSettings& s, Generator g = Generator::full);

Mat2 apply_channel(const ChannelCoefficients& c, const Mat2& rho0);

/// Linear map on vec(rho) = (rho11, rho10, rho01, rho00), i.e. row-major
/// flattening of the 2x2 matrix. Includes the e^{-gamma_k} factor.
Mat4 transfer_matrix(const ChannelCoefficients& c);

}  // namespace nmdyn
