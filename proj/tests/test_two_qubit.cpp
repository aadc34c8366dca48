#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nmdyn/two_qubit.hpp"

using namespace nmdyn;

namespace {

const BathParams kB{10.0, 1.0, 10.0};
const BathParams kC{3.0, 1.0, 10.0};

// Single-qubit ket with 1 = excited stored first.
Eigen::Vector2cd ket(int bit) { return bit == 1 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0); }

Eigen::Vector4cd kron(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Mat2 random_density(std::mt19937& rng) {
  std::normal_distribution<double> n;
  Mat2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = cplx(n(rng), n(rng));
  Mat2 rho = a * a.adjoint();
  return rho / rho.trace();
}

ChannelCoefficients channel_at_time(const BathParams& p, double t) {
  return channel_trajectory(p, std::vector<double>{0.0, t}, IntegratorSettings{}).back();
}

}  // namespace

TEST_CASE("Bell-family initial states") {
  const JointDensity phi = initial_state(BellFamilyState::from_beta2(BellFamily::phi, 0.5));
  Mat4 expected = Mat4::Zero();
  expected(1, 1) = expected(2, 2) = expected(1, 2) = expected(2, 1) = 0.5;
  CHECK((phi - expected).cwiseAbs().maxCoeff() < 1e-15);

  const JointDensity psi = initial_state(BellFamilyState::from_beta2(BellFamily::psi, 0.5));
  expected = Mat4::Zero();
  expected(0, 0) = expected(3, 3) = expected(0, 3) = expected(3, 0) = 0.5;
  CHECK((psi - expected).cwiseAbs().maxCoeff() < 1e-15);

  // beta|01> + eta|10>, built independently from product kets
  const double phase = std::numbers::pi / 2.0;
  const auto s = BellFamilyState::from_beta2(BellFamily::phi, 0.25, phase);
  const cplx eta = std::polar(std::sqrt(0.75), phase);
  const Eigen::Vector4cd xi = 0.5 * kron(ket(0), ket(1)) + eta * kron(ket(1), ket(0));
  const Mat4 outer = xi * xi.adjoint();
  const JointDensity rho = initial_state(s);
  CHECK((rho - outer).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(rho(2, 2).real() == doctest::Approx(0.25));
  CHECK(rho(1, 1).real() == doctest::Approx(0.75));
  CHECK(std::abs(rho(2, 1) - std::conj(rho(1, 2))) < 1e-16);
  CHECK(std::abs(rho(1, 2) - cplx(0.0, 0.5 * std::sqrt(0.75))) < 1e-15);
  CHECK(std::abs(s.beta * s.beta + std::norm(s.eta()) - 1.0) < 1e-15);

  CHECK_THROWS_AS(initial_state(BellFamilyState{BellFamily::phi, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(initial_state(BellFamilyState{BellFamily::psi, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(initial_state(BellFamilyState{BellFamily::psi, NAN, 0.0}), DomainError);
}

TEST_CASE("X-state test") {
  Mat4 rho = initial_state(BellFamilyState::from_beta2(BellFamily::psi, 0.3));
  CHECK(is_x_state(rho));
  rho(0, 1) = 1e-10;
  CHECK_FALSE(is_x_state(rho));
  CHECK(is_x_state(rho, 1e-9));
}

TEST_CASE("evolve_pair is the tensor product of the local channels") {
  std::mt19937 rng(3);
  const ChannelCoefficients id;
  const JointDensity rho0 = initial_state(BellFamilyState::from_beta2(BellFamily::phi, 0.3, 0.4));
  CHECK((evolve_pair(id, rho0) - rho0).cwiseAbs().maxCoeff() == 0.0);

  for (double t : {0.3, 1.1, 4.0}) {
    const ChannelCoefficients c = channel_at_time(kC, t);
    for (int k = 0; k < 3; ++k) {
      const Mat2 a = random_density(rng);
      const Mat2 b = random_density(rng);
      const Mat4 got = evolve_pair(c, kron(a, b));
      const Mat4 want = kron(apply_channel(c, a), apply_channel(c, b));
      CHECK((got - want).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("X-state closure and trace") {
  const ChannelCoefficients c = channel_at_time(kB, 0.7);
  for (BellFamily fam : {BellFamily::phi, BellFamily::psi}) {
    for (double b2 : {0.1, 0.5, 0.85}) {
      const JointDensity out = evolve_pair(c, initial_state(BellFamilyState::from_beta2(fam, b2, 0.9)));
      CHECK(is_x_state(out, 0.0));
      CHECK(std::abs(out.trace() - 1.0) < 1e-6);
      CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("explicit element formulas") {
  const ChannelCoefficients id;
  const JointDensity rho0 = initial_state(BellFamilyState::from_beta2(BellFamily::phi, 0.5));
  const JointDensity at_id = explicit_elements(id, rho0);
  // the printed rho22 reads l*m*rho22(0), which is 0 at the identity
  CHECK(at_id(1, 1) == cplx(0.0, 0.0));
  Mat4 others = at_id - rho0;
  others(1, 1) = 0.0;
  CHECK(others.cwiseAbs().maxCoeff() == 0.0);

  for (const auto& [p, t] : {std::pair{kB, 0.5}, std::pair{kC, 1.0}}) {
    const ChannelCoefficients c = channel_at_time(p, t);
    for (BellFamily fam : {BellFamily::phi, BellFamily::psi}) {
      const JointDensity r0 = initial_state(BellFamilyState::from_beta2(fam, 0.5));
      const JointDensity tensor = evolve_pair(c, r0);
      const JointDensity printed = explicit_elements(c, r0);
      Mat4 diff = printed - tensor;
      const cplx d22 = diff(1, 1);
      diff(1, 1) = 0.0;
      CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
      const cplx expected = std::exp(-2.0 * c.gamma_k) * (c.l * c.n - c.l * c.m) * r0(1, 1);
      CHECK(std::abs(-d22 - expected) < 1e-12);
    }
  }

  Mat4 not_x = rho0;
  not_x(0, 1) = 0.1;
  not_x(1, 0) = 0.1;
  CHECK_THROWS_AS(explicit_elements(id, not_x), ShapeError);
}
