#pragma once

// Brute-force references for the disentangled pipeline: direct integration
// of the master equation with explicit superoperators, quadrature of the
// kernel integrals, and the exactly solvable rotating-wave model.

#include <span>
#include <vector>

#include "nmdyn/lie_channel.hpp"

namespace nmdyn::oracle {

/// The six superoperators of the master equation, acting on 2x2 matrices.
Mat2 super_j0(const Mat2& rho);  ///< [sz/4, rho]
Mat2 super_jp(const Mat2& rho);  ///< s+ rho s+
Mat2 super_jm(const Mat2& rho);  ///< s- rho s-
Mat2 super_k0(const Mat2& rho);  ///< (s+s- rho + rho s+s- - rho)/2
Mat2 super_kp(const Mat2& rho);  ///< s+ rho s-
Mat2 super_km(const Mat2& rho);  ///< s- rho s+

/// Full generator d rho/dt at time t.
Mat2 master_rhs(double t, const Mat2& rho, const BathParams& p, Generator g = Generator::full);

/// Integrates the master equation directly on (rho11, Re rho10, Im rho10, rho00);
/// rho00 is kept as an independent component so trace drift stays visible.
/// Uses the same step cap as the disentangled integration.
std::vector<Mat2> integrate_master_direct(const BathParams& p, const Mat2& rho0, std::span<const double> t_grid,
                                          const IntegratorSettings& s, Generator g = Generator::full);

/// Single-excitation amplitude of the exactly solvable rotating-wave model with
/// kernel alpha1: q(t) = e^{-gamma t/2}[cos(dt/2) + (gamma/d) sin(dt/2)],
/// d = sqrt(2 lambda gamma - gamma^2), continued hyperbolically when d^2 < 0.
cplx rwa_amplitude(double t, const BathParams& p);

/// rwa_amplitude packaged as channel coefficients with gamma_k = 0.
ChannelCoefficients rwa_channel(double t, const BathParams& p);

/// max over the grid of |q'(t) + int_0^t alpha1(t - s) q(s) ds|, with q' from a
/// five-point central difference of the closed form.
double rwa_residual(const BathParams& p, std::span<const double> t_grid);

/// int_{-inf}^{inf} J(w) dw
double spectral_weight_by_quadrature(const BathParams& p);
/// int J(w) e^{-i(w - w0)t} dw over the real line.
cplx alpha1_by_quadrature(double t, const BathParams& p);
/// int J(w) e^{i(w + w0)t} dw over the real line.
cplx alpha2_by_quadrature(double t, const BathParams& p);
/// int_0^t e^{-(gamma + 2 i w0)s} ds
cplx alpha_by_quadrature(double t, const BathParams& p);
/// int_0^t alpha(s) ds
cplx alpha_tilde_by_quadrature(double t, const BathParams& p);
/// (lambda/2) int_0^t (gamma alpha^R(s) + f(s)) ds
double decay_exponent_by_quadrature(double t, const BathParams& p);

}  // namespace nmdyn::oracle
