#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sampling.hpp"
#include "vbody/fluid.hpp"
#include "vbody/oracle.hpp"

namespace vbody::oracle {
namespace {

constexpr double pi = std::numbers::pi;

TEST(FdGradient, ExactOnQuadratic) {
  for (int order : {2, 4, 6}) {
    const Eigen::VectorXd g = fd_gradient(
        [](const Eigen::VectorXd& x) { return x.squaredNorm(); }, Eigen::Vector2d(1, 2),
        {1e-3, order});
    EXPECT_LE((g - Eigen::Vector2d(2, 4)).norm(), 1e-10);
  }
}

TEST(FdGradient, ConstantGivesZero) {
  const Eigen::VectorXd g =
      fd_gradient([](const Eigen::VectorXd&) { return 3.5; }, Eigen::Vector3d(1, 2, 3));
  EXPECT_EQ(g.norm(), 0.0);
}

TEST(FdGradient, OrderIsObserved) {
  auto f = [](const Eigen::VectorXd& x) { return std::sin(3 * x[0]); };
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(1, 0.4);
  const double exact = 3 * std::cos(1.2);
  for (int order : {2, 4, 6}) {
    const double e1 = std::abs(fd_gradient(f, p, {0.02, order})[0] - exact);
    const double e2 = std::abs(fd_gradient(f, p, {0.01, order})[0] - exact);
    EXPECT_NEAR(std::log2(e1 / e2), order, 0.1);
  }
  EXPECT_THROW(fd_gradient(f, p, {0.01, 3}), DomainError);
  EXPECT_THROW(fd_gradient(f, p, {0.0, 2}), DomainError);
}

TEST(FdGradient, AgreesWithKirchhoffRouthGradient) {
  const VortexSet v{{1.0, -0.6, 2.0}, {Vec2(2, 0.5), Vec2(-1.5, 1.5), Vec2(0.2, -2.4)}};
  Eigen::VectorXd x(6);
  for (int i = 0; i < 3; ++i) x.segment<2>(2 * i) = v.positions[i];
  const Eigen::VectorXd fd = fd_gradient(
      [&](const Eigen::VectorXd& p) {
        VortexSet u = v;
        for (int i = 0; i < 3; ++i) u.positions[i] = p.segment<2>(2 * i);
        return fluid::kirchhoff_routh(u, {1.0});
      },
      x, {1e-5, 2});
  const auto g = fluid::grad_kirchhoff_routh(v, {1.0});
  for (int i = 0; i < 3; ++i) EXPECT_LE((g[i] - fd.segment<2>(2 * i)).norm(), 1e-7);
}

TEST(ImageVortex, Speed) {
  const Vec2 u = image_vortex_velocity(Vec2(2, 0), 2 * pi, 1.0);
  EXPECT_NEAR(u.norm(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(u.x(), 0.0, 1e-15);
  EXPECT_LT(u.y(), 0.0);
  const double d = 1e3;
  const double gamma = 1.3;
  const double R = 1.2;
  EXPECT_LE(image_vortex_velocity(Vec2(0, d), gamma, R).norm(),
            2 * R * R * gamma / (2 * pi * d * d * d));
  EXPECT_THROW(image_vortex_velocity(Vec2(0.5, 0), 1.0, 1.0), DomainError);
}

TEST(ImageVortex, RotationCovariant) {
  testing::Sampler s(61);
  for (int k = 0; k < 20; ++k) {
    const Vec2 X = s.exterior_point(1.0);
    const Eigen::Matrix2d rot = Eigen::Rotation2Dd(s.uniform(-pi, pi)).toRotationMatrix();
    EXPECT_LE((image_vortex_velocity(rot * X, 0.8, 1.0) -
               rot * image_vortex_velocity(X, 0.8, 1.0))
                  .norm(),
              1e-12);
  }
}

TEST(Pushforward, NoVorticesIsExact) {
  const ChartState z{Chart::bmr, Eigen::Vector3d(0.2, 0.4, -0.1), {}};
  EXPECT_LE(pushforward_check(z, {2.0, 1.0, 1.0}, {}), 1e-12);
}

TEST(Pushforward, ConsistentTarget) {
  testing::Sampler s(62);
  for (int k = 0; k < 20; ++k) {
    const BodyParams body = s.body();
    const VortexSet v = s.vortices(2);
    const ChartState z = s.state(Chart::bmr, v);
    EXPECT_LE(pushforward_check(z, body, v.strengths, {}, Target::consistent), 1e-9);
  }
}

TEST(Pushforward, FlippedVortexSignIsDetected) {
  testing::Sampler s(63);
  for (int k = 0; k < 20; ++k) {
    const BodyParams body = s.body();
    const VortexSet v = s.vortices(2);
    const ChartState z = s.state(Chart::bmr, v);
    double bound = 0.0;
    for (double g : v.strengths) bound = std::max(bound, 2.0 / std::abs(g));
    EXPECT_GE(pushforward_check(z, body, v.strengths, {-1.0, -1.0}, Target::consistent),
              bound * (1 - 1e-12));
  }
}

// With the published signs the {V, X} coupling agrees, but {V1, V2} and
// {X_i, Y_i} come out with the opposite sign.
TEST(Pushforward, PublishedBlockDiffersOnlyBySigns) {
  testing::Sampler s(64);
  const BodyParams body = s.body();
  const VortexSet v = s.vortices(2);
  const ChartState z = s.state(Chart::bmr, v);
  const double dev = pushforward_check(z, body, v.strengths);
  double expected = 0.0;
  for (double g : v.strengths) expected = std::max(expected, 2.0 / std::abs(g));
  EXPECT_GE(dev, expected * (1 - 1e-12));
}

}  // namespace
}  // namespace vbody::oracle
