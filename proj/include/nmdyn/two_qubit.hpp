#pragma once

// Two independent qubits, each in its own reservoir with identical parameters.
// Joint states use the product basis {|11>, |10>, |01>, |00>} (indices 0..3),
// first label = qubit A, second = qubit B, 1 = excited.

#include "nmdyn/lie_channel.hpp"

namespace nmdyn {

using JointDensity = Mat4;

enum class BellFamily {
  phi,  ///< beta|01> + eta|10>
  psi,  ///< beta|00> + eta|11>
};

struct BellFamilyState {
  BellFamily family = BellFamily::phi;
  double beta = 0.0;       ///< real amplitude in (0, 1)
  double eta_phase = 0.0;  ///< eta = sqrt(1 - beta^2) e^{i eta_phase}

  static BellFamilyState from_beta2(BellFamily family, double beta2, double eta_phase = 0.0);
  cplx eta() const;
};

/// |xi><xi| for a Bell-family state. Throws DomainError if beta is not in (0, 1).
JointDensity initial_state(const BellFamilyState& s);

/// True when every element outside the diagonal and anti-diagonal is at most `tol`.
bool is_x_state(const JointDensity& rho, double tol = 0.0);

/// (T (x) T) applied to vec(rho0), T = transfer_matrix(c).
JointDensity evolve_pair(const ChannelCoefficients& c, const JointDensity& rho0);

/// Element-by-element closed forms for an X-state input, including the
/// printed rho22 expression whose second term reads l*m instead of l*n.
/// Only used to cross-check evolve_pair. Throws ShapeError for non-X input.
JointDensity explicit_elements(const ChannelCoefficients& c, const JointDensity& rho0);

}  // namespace nmdyn
