#include "nmdyn/two_qubit.hpp"

#include <cmath>
#include <string>

namespace nmdyn {

BellFamilyState BellFamilyState::from_beta2(BellFamily family, double beta2, double eta_phase) {
  return {family, std::sqrt(beta2), eta_phase};
}

cplx BellFamilyState::eta() const { return std::polar(std::sqrt(1.0 - beta * beta), eta_phase); }

JointDensity initial_state(const BellFamilyState& s) {
  if (!(s.beta > 0.0 && s.beta < 1.0)) {
    throw DomainError("beta must lie in (0, 1), got " + std::to_string(s.beta));
  }
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  if (s.family == BellFamily::phi) {
    v[2] = s.beta;   // |01>
    v[1] = s.eta();  // |10>
  } else {
    v[3] = s.beta;   // |00>
    v[0] = s.eta();  // |11>
  }
  return v * v.adjoint();
}

bool is_x_state(const JointDensity& rho, double tol) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(rho(i, j)) > tol) return false;
    }
  }
  return true;
}

JointDensity evolve_pair(const ChannelCoefficients& c, const JointDensity& rho0) {
  const Mat4 t = transfer_matrix(c);
  // Joint index i = 2a + b (a: qubit A, b: qubit B). The single-qubit vec index
  // of element (a, a') is 2a + a'.
  JointDensity out = JointDensity::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ac = 0; ac < 2; ++ac)
        for (int bc = 0; bc < 2; ++bc) {
          cplx acc;
          for (int a0 = 0; a0 < 2; ++a0)
            for (int b0 = 0; b0 < 2; ++b0)
              for (int ac0 = 0; ac0 < 2; ++ac0)
                for (int bc0 = 0; bc0 < 2; ++bc0) {
                  const cplx tab = t(2 * a + ac, 2 * a0 + ac0) * t(2 * b + bc, 2 * b0 + bc0);
                  if (tab != cplx{}) acc += tab * rho0(2 * a0 + b0, 2 * ac0 + bc0);
                }
          out(2 * a + b, 2 * ac + bc) = acc;
        }
  return out;
}

JointDensity explicit_elements(const ChannelCoefficients& c, const JointDensity& rho0) {
  if (!is_x_state(rho0)) throw ShapeError("explicit_elements requires an X-state input");
  const double l = c.l, m = c.m, n = c.n, p = c.p;
  const cplx q = c.q, r = c.r, x = c.x, y = c.y;
  const cplx r11 = rho0(0, 0), r22 = rho0(1, 1), r33 = rho0(2, 2), r44 = rho0(3, 3);
  const cplx r14 = rho0(0, 3), r23 = rho0(1, 2), r32 = rho0(2, 1), r41 = rho0(3, 0);

  JointDensity out = JointDensity::Zero();
  out(0, 0) = l * l * r11 + l * m * r22 + m * l * r33 + m * m * r44;
  out(1, 1) = l * p * r11 + l * m * r22 + m * p * r33 + m * n * r44;  // as printed
  out(2, 2) = l * p * r11 + p * m * r22 + n * l * r33 + n * m * r44;
  out(3, 3) = p * p * r11 + p * n * r22 + n * p * r33 + n * n * r44;

  out(0, 3) = x * x * r14 + x * y * r23 + y * x * r32 + y * y * r41;
  out(1, 2) = x * r * r14 + x * q * r23 + y * r * r32 + y * q * r41;
  out(2, 1) = r * x * r14 + r * y * r23 + q * x * r32 + q * y * r41;
  out(3, 0) = r * r * r14 + r * q * r23 + q * r * r32 + q * q * r41;

  return std::exp(-2.0 * c.gamma_k) * out;
}

}  // namespace nmdyn
