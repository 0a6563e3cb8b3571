#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sampling.hpp"
#include "vbody/energetics.hpp"
#include "vbody/fluid.hpp"
#include "vbody/maps.hpp"
#include "vbody/oracle.hpp"

namespace vbody::energetics {
namespace {

constexpr double pi = std::numbers::pi;

TEST(EffectiveMass, AddedMassOfCircle) {
  const EffectiveMass m = effective_mass({pi, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(m.c, 2 * pi);
  const Eigen::Matrix3d added = EffectiveMass::added(1.0);
  EXPECT_EQ(added(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(added(1, 1), pi);
  EXPECT_DOUBLE_EQ(added(2, 2), pi);
  EXPECT_EQ(effective_mass({1.0, 3.0, 2.0}).i_eff, 3.0);
}

TEST(EffectiveMass, PositiveDefinite) {
  testing::Sampler s(21);
  for (int k = 0; k < 20; ++k) {
    const EffectiveMass m = effective_mass(s.body(s.uniform(0.1, 3.0)));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m.matrix());
    EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
  }
  EXPECT_THROW(effective_mass({0.0, 1.0, 1.0}), DomainError);
}

TEST(Hamiltonian, NoVortices) {
  const BodyParams body{2.0, 0.7, 1.0};
  const double c = effective_mass(body).c;
  const ChartState smbk{Chart::smbk, Eigen::Vector3d(0.4, 1.2, -0.5), {}};
  EXPECT_NEAR(hamiltonian(smbk, body, {}),
              (1.2 * 1.2 + 0.25) / (2 * c) + 0.16 / (2 * 0.7), 1e-15);
  const Eigen::VectorXd g = hamiltonian_gradient(smbk, body, {});
  EXPECT_NEAR(g[1], 1.2 / c, 1e-15);
  EXPECT_NEAR(g[2], -0.5 / c, 1e-15);
}

TEST(Hamiltonian, RestingBodyIsMinusKirchhoffRouth) {
  const VortexSet v{{1.0, -0.5}, {Vec2(2, 0.5), Vec2(-1.5, 1.5)}};
  const ChartState s{Chart::bmr, Eigen::Vector3d::Zero(), v.positions};
  EXPECT_DOUBLE_EQ(hamiltonian(s, {1.0, 1.0, 1.0}, v.strengths),
                   -fluid::kirchhoff_routh(v, {1.0}));
}

TEST(Hamiltonian, ShiftCompatibility) {
  testing::Sampler s(22);
  for (int k = 0; k < 100; ++k) {
    const BodyParams body = s.body(s.uniform(0.5, 1.5));
    const VortexSet v = s.vortices(1 + k % 3, body.radius);
    const ChartState z = s.state(Chart::bmr, v);
    const double hb = hamiltonian(z, body, v.strengths);
    const double hs = hamiltonian(maps::shift_map(z, body, v.strengths), body, v.strengths);
    EXPECT_LE(std::abs(hs - hb), 1e-10 * std::abs(hb));
  }
}

TEST(Hamiltonian, GradientMatchesFiniteDifferences) {
  testing::Sampler s(23);
  for (Chart chart : {Chart::smbk, Chart::bmr}) {
    for (int k = 0; k < 20; ++k) {
      const BodyParams body = s.body();
      const VortexSet v = s.vortices(1 + k % 3);
      const ChartState z = s.state(chart, v);
      const Eigen::VectorXd g = hamiltonian_gradient(z, body, v.strengths);
      const Eigen::VectorXd fd = oracle::fd_gradient(
          [&](const Eigen::VectorXd& x) {
            return hamiltonian(ChartState::from_flat(chart, x), body, v.strengths);
          },
          z.flat(), {1e-5, 4});
      EXPECT_LE((g - fd).lpNorm<Eigen::Infinity>(), 1e-7);
      const Eigen::VectorXd internal = hamiltonian_gradient(
          z, body, v.strengths, GradientMode::finite_difference);
      EXPECT_LE((g - internal).lpNorm<Eigen::Infinity>(), 1e-7);
    }
  }
}

TEST(Hamiltonian, MomentumGradientIsVelocity) {
  testing::Sampler s(24);
  for (int k = 0; k < 20; ++k) {
    const BodyParams body = s.body();
    const VortexSet v = s.vortices(2);
    const ChartState z = s.state(Chart::smbk, v);
    const Eigen::VectorXd g = hamiltonian_gradient(z, body, v.strengths);
    const ChartState w = maps::inverse_shift_map(z, body, v.strengths);
    EXPECT_LE((g.segment<2>(1) - w.body.tail<2>()).norm(), 1e-9);
    EXPECT_NEAR(g[0], w.body[0], 1e-9);
  }
}

TEST(Hamiltonian, MaterialRotationSymmetry) {
  testing::Sampler s(25);
  for (Chart chart : {Chart::smbk, Chart::bmr}) {
    for (int k = 0; k < 20; ++k) {
      const BodyParams body = s.body();
      const VortexSet v = s.vortices(3);
      ChartState z = s.state(chart, v);
      const double h = hamiltonian(z, body, v.strengths);
      const Eigen::Matrix2d rot = Eigen::Rotation2Dd(s.uniform(-pi, pi)).toRotationMatrix();
      z.body.tail<2>() = rot * z.body.tail<2>();
      for (Vec2& X : z.positions) X = rot * X;
      EXPECT_NEAR(hamiltonian(z, body, v.strengths), h, 1e-12 * (1.0 + std::abs(h)));
    }
  }
}

TEST(Hamiltonian, RejectsZeroStrength) {
  const ChartState z{Chart::bmr, Eigen::Vector3d::Zero(), {Vec2(2, 0)}};
  const std::vector<double> zero{0.0};
  EXPECT_THROW(hamiltonian(z, {1, 1, 1}, zero), DomainError);
}

}  // namespace
}  // namespace vbody::energetics
