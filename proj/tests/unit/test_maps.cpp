#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sampling.hpp"
#include "vbody/dynamics.hpp"
#include "vbody/energetics.hpp"
#include "vbody/maps.hpp"
#include "vbody/oracle.hpp"

namespace vbody::maps {
namespace {

constexpr double pi = std::numbers::pi;
using se2::Basis;

TEST(BgPotential, Values) {
  const se2::Costate empty = bg_potential(VortexSet{}, {1.0});
  EXPECT_EQ(empty.pi_omega, 0.0);
  EXPECT_EQ(empty.pi_xy, Vec2::Zero());
  const double gamma = 1.7;
  const double d = 2.5;
  const se2::Costate phi = bg_potential(VortexSet{{gamma}, {Vec2(d, 0)}}, {1.0});
  EXPECT_NEAR(phi.pi_omega, gamma * d * d / 2, 1e-15);
  EXPECT_NEAR(phi.pi_xy.y(), gamma * (d - 1 / d), 1e-15);
  EXPECT_NEAR(phi.pi_xy.x(), 0.0, 1e-15);
}

TEST(BgPotential, AnalyticGradient) {
  testing::Sampler s(41);
  for (int k = 0; k < 30; ++k) {
    const FluidParams params{s.uniform(0.5, 2.0)};
    const double g = s.uniform(-2, 2);
    const Vec2 X = s.exterior_point(params.radius);
    const auto d = bg_potential_gradient(g, X, params);
    for (int a = 0; a < 3; ++a) {
      const Eigen::VectorXd fd = oracle::fd_gradient(
          [&](const Eigen::VectorXd& p) {
            const se2::Costate phi = bg_potential(VortexSet{{g}, {Vec2(p)}}, params);
            return a == 0 ? phi.pi_omega : phi.pi_xy[a - 1];
          },
          X, {1e-4, 6});
      EXPECT_LE((d.row(a).transpose() - fd).norm(), 1e-9);
    }
  }
}

TEST(ShiftMap, NoVortices) {
  const BodyParams body{2.0, 0.8, 1.0};
  const ChartState z{Chart::bmr, Eigen::Vector3d(0.5, 1.0, -2.0), {}};
  const ChartState w = shift_map(z, body, {});
  const double c = energetics::effective_mass(body).c;
  EXPECT_DOUBLE_EQ(w.body[0], 0.8 * 0.5);
  EXPECT_DOUBLE_EQ(w.body[1], c);
  EXPECT_DOUBLE_EQ(w.body[2], -2 * c);
}

TEST(ShiftMap, WorkedValue) {
  const BodyParams body{pi, 1.0, 1.0};
  const ChartState z{Chart::bmr, Eigen::Vector3d(0.0, 1.0, 0.0), {Vec2(2, 0)}};
  const std::vector<double> g{1.0};
  const ChartState w = shift_map(z, body, g);
  EXPECT_EQ(w.chart, Chart::smbk);
  EXPECT_NEAR(w.body[1], 2 * pi, 1e-15);
  EXPECT_NEAR(w.body[2], -1.5, 1e-15);
  EXPECT_NEAR(w.body[0], -2.0, 1e-15);
  EXPECT_EQ(w.positions[0], z.positions[0]);
}

TEST(ShiftMap, RoundTripAndIdentityOnVortices) {
  testing::Sampler s(42);
  for (int k = 0; k < 100; ++k) {
    const BodyParams body = s.body(s.uniform(0.5, 1.5));
    const VortexSet v = s.vortices(1 + k % 4, body.radius);
    const ChartState z = s.state(Chart::bmr, v);
    const ChartState w = shift_map(z, body, v.strengths);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(w.positions[i], z.positions[i]);
    const ChartState back = inverse_shift_map(w, body, v.strengths);
    EXPECT_LE((back.flat() - z.flat()).lpNorm<Eigen::Infinity>(), 1e-13);
  }
}

TEST(ShiftMap, AnalyticJacobians) {
  testing::Sampler s(43);
  for (int k = 0; k < 30; ++k) {
    const BodyParams body = s.body();
    const VortexSet v = s.vortices(1 + k % 3);
    const ChartState z = s.state(Chart::bmr, v);
    const Eigen::MatrixXd fd = oracle::fd_jacobian(
        [&](const Eigen::VectorXd& x) {
          return shift_map(ChartState::from_flat(Chart::bmr, x), body, v.strengths).flat();
        },
        z.flat(), {1e-4, 6});
    EXPECT_LE((shift_jacobian(z, body, v.strengths) - fd).lpNorm<Eigen::Infinity>(), 1e-9);
    const ChartState w = shift_map(z, body, v.strengths);
    const Eigen::MatrixXd product =
        inverse_shift_jacobian(w, body, v.strengths) * shift_jacobian(z, body, v.strengths);
    EXPECT_LE((product - Eigen::MatrixXd::Identity(z.dim(), z.dim())).norm(), 1e-13);
  }
}

TEST(ShiftMap, IsOffsetByBgPotential) {
  testing::Sampler s(44);
  const BodyParams body = s.body();
  const VortexSet v = s.vortices(3);
  const ChartState z = s.state(Chart::bmr, v);
  const auto mass = energetics::effective_mass(body);
  const se2::Costate pi_body{mass.i_eff * z.body[0], mass.c * z.body.tail<2>()};
  const se2::Costate j = body_momentum_map(pi_body, v, body.fluid());
  const ChartState w = shift_map(z, body, v.strengths);
  EXPECT_NEAR(j.pi_omega, w.body[0], 1e-13);
  EXPECT_LE((j.pi_xy - w.body.tail<2>()).norm(), 1e-13);
}

TEST(MomentumMap, IdentityPoseGivesBodyMap) {
  testing::Sampler s(45);
  for (int k = 0; k < 20; ++k) {
    const VortexSet v = s.vortices(1 + k % 3);
    const se2::Costate pi{s.uniform(-1, 1), Vec2(s.uniform(-1, 1), s.uniform(-1, 1))};
    const se2::Costate a = momentum_map(se2::Element::identity(), pi, v, {1.0});
    const se2::Costate b = body_momentum_map(pi, v, {1.0});
    EXPECT_NEAR(a.pi_omega, b.pi_omega, 1e-13);
    EXPECT_LE((a.pi_xy - b.pi_xy).norm(), 1e-13);
  }
  const se2::Costate pi{0.3, Vec2(-1, 2)};
  const se2::Costate j = momentum_map(se2::Element::identity(), pi, VortexSet{}, {1.0});
  EXPECT_EQ(j.pi_omega, 0.3);
  EXPECT_EQ(j.pi_xy, Vec2(-1, 2));
}

TEST(MomentumMap, DirectEvaluationMatchesRelation) {
  testing::Sampler s(46);
  for (int k = 0; k < 100; ++k) {
    const FluidParams params{s.uniform(0.5, 1.5)};
    const VortexSet v = s.vortices(1 + k % 3, params.radius);
    const se2::Element pose{s.uniform(-pi, pi), Vec2(s.uniform(-3, 3), s.uniform(-3, 3))};
    const se2::Costate pi_body{s.uniform(-1, 1), Vec2(s.uniform(-1, 1), s.uniform(-1, 1))};
    const se2::Costate direct = momentum_map(pose, pi_body, v, params);
    const se2::Costate related =
        relation(pose, body_momentum_map(pi_body, v, params), v.total_strength());
    EXPECT_NEAR(direct.pi_omega, related.pi_omega, 1e-12);
    EXPECT_LE((direct.pi_xy - related.pi_xy).norm(), 1e-12);
  }
}

// The spatial momentum map is the Noether quantity of the translation and
// rotation symmetry; it must be constant along solutions, also for nonzero
// total strength.
TEST(MomentumMap, ConservedAlongTrajectory) {
  dynamics::SimConfig config;
  config.body = {3.0, 1.3, 1.0};
  config.vortices = {{1.3, -0.7}, {Vec2(1.7, 0.4), Vec2(-0.5, -2.1)}};
  config.initial_body = Eigen::Vector3d(0.3, 0.2, -0.1);
  config.initial_pose = {0.1, Vec2(0.5, -0.2)};
  config.dt = 1e-3;
  config.t_end = 2.0;
  config.stride = 100;
  const dynamics::Trajectory traj = dynamics::integrate(config);
  ASSERT_FALSE(traj.halt);
  const auto mass = energetics::effective_mass(config.body);
  auto spatial = [&](std::size_t k) {
    const ChartState& z = traj.states[k];
    const VortexSet v{config.vortices.strengths, z.positions};
    return momentum_map(traj.poses[k], {mass.i_eff * z.body[0], mass.c * z.body.tail<2>()},
                        v, config.body.fluid());
  };
  const se2::Costate j0 = spatial(0);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const se2::Costate j = spatial(k);
    EXPECT_NEAR(j.pi_omega, j0.pi_omega, 1e-7);
    EXPECT_LE((j.pi_xy - j0.pi_xy).norm(), 1e-7);
  }
}

TEST(MagneticPairing, GeneratorValues) {
  testing::Sampler s(47);
  for (int k = 0; k < 20; ++k) {
    const FluidParams params{s.uniform(0.5, 1.5)};
    const VortexSet v = s.vortices(1 + k % 3, params.radius);
    EXPECT_NEAR(magnetic_pairing(Basis::x, Basis::y, v, params), -v.total_strength(), 1e-12);
    double bx = 0.0;
    double by = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2& X = v.positions[i];
      const double k2 = params.radius * params.radius / X.squaredNorm();
      bx += v.strengths[i] * (-X.x() + k2 * X.x());
      by += v.strengths[i] * (-X.y() + k2 * X.y());
    }
    EXPECT_NEAR(magnetic_pairing(Basis::x, Basis::omega, v, params), bx, 1e-12);
    EXPECT_NEAR(magnetic_pairing(Basis::y, Basis::omega, v, params), by, 1e-12);
    for (Basis a : {Basis::omega, Basis::x, Basis::y}) {
      for (Basis b : {Basis::omega, Basis::x, Basis::y}) {
        EXPECT_EQ(magnetic_pairing(a, b, v, params), -magnetic_pairing(b, a, v, params));
      }
    }
  }
  for (Basis a : {Basis::omega, Basis::x, Basis::y}) {
    EXPECT_EQ(magnetic_pairing(a, Basis::x, VortexSet{}, {1.0}), 0.0);
  }
}

// i_xi beta = d<phi, xi> on vortex displacements: phi is a potential for the
// magnetic form.
TEST(MagneticPairing, BgPotentialIsPotential) {
  testing::Sampler s(48);
  for (int k = 0; k < 20; ++k) {
    const FluidParams params{1.0};
    const VortexSet v = s.vortices(2, params.radius);
    for (Basis a : {Basis::omega, Basis::x, Basis::y}) {
      const se2::Algebra xi = se2::basis_vector(a);
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (int c = 0; c < 2; ++c) {
          Tangent delta{{}, std::vector<Vec2>(v.size(), Vec2::Zero())};
          delta.vortex[i][c] = 1.0;
          const double lhs = magnetic_form(generator(xi, v), delta, v, params);
          const double rhs =
              bg_potential_gradient(v.strengths[i], v.positions[i], params)(
                  static_cast<int>(a), c);
          EXPECT_NEAR(lhs, rhs, 1e-12);
        }
      }
    }
  }
}

TEST(Cocycle, IsMinusGammaDxDy) {
  testing::Sampler s(49);
  for (int k = 0; k < 20; ++k) {
    const FluidParams params{s.uniform(0.5, 1.5)};
    const VortexSet v = s.vortices(1 + k % 4, params.radius);
    const CocycleForm sigma = cocycle_sigma(v, params);
    EXPECT_NEAR(sigma(Basis::x, Basis::y), -v.total_strength(), 1e-12);
    EXPECT_NEAR(sigma(Basis::x, Basis::omega), 0.0, 1e-10);
    EXPECT_NEAR(sigma(Basis::y, Basis::omega), 0.0, 1e-10);
    EXPECT_EQ(sigma(Basis::y, Basis::x), -sigma(Basis::x, Basis::y));
    EXPECT_EQ(sigma(Basis::x, Basis::x), 0.0);
  }
  const VortexSet balanced{{1.2, -1.2}, {Vec2(2, 0.3), Vec2(-1, 2)}};
  const CocycleForm zero = cocycle_sigma(balanced, {1.0});
  EXPECT_NEAR(zero.x_y(), 0.0, 1e-12);
  EXPECT_NEAR(zero.omega_x(), 0.0, 1e-12);
  EXPECT_NEAR(zero.omega_y(), 0.0, 1e-12);
}

}  // namespace
}  // namespace vbody::maps
