#include "vbody/se2.hpp"

#include <cmath>
#include <numbers>

namespace vbody::se2 {

namespace {

// Below this |omega dt| the screw integral is replaced by its Taylor series.
constexpr double kSmallAngle = 1e-8;

}  // namespace

double normalize_angle(double beta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double b = std::remainder(beta, two_pi);
  if (b <= -std::numbers::pi) b += two_pi;
  return b;
}

Eigen::Matrix2d Element::rotation() const {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

Eigen::Matrix3d Element::matrix() const {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m.topLeftCorner<2, 2>() = rotation();
  m.topRightCorner<2, 1>() = x0;
  return m;
}

Algebra bracket(const Algebra& xi, const Algebra& eta) {
  // [xi, eta] = (0, w1 e3 x v2 - w2 e3 x v1)
  auto e3_cross = [](const Vec2& v) { return Vec2(-v.y(), v.x()); };
  return {0.0, xi.omega * e3_cross(eta.v) - eta.omega * e3_cross(xi.v)};
}

Algebra basis_vector(Basis b) {
  switch (b) {
    case Basis::omega:
      return {1.0, Vec2::Zero()};
    case Basis::x:
      return {0.0, Vec2(1.0, 0.0)};
    case Basis::y:
      return {0.0, Vec2(0.0, 1.0)};
  }
  return {};
}

double pair(const Costate& mu, const Algebra& xi) {
  return mu.pi_omega * xi.omega + mu.pi_xy.dot(xi.v);
}

Element compose(const Element& g1, const Element& g2) {
  return {normalize_angle(g1.beta + g2.beta), g1.x0 + g1.rotation() * g2.x0};
}

Element inverse(const Element& g) {
  return {normalize_angle(-g.beta), -(g.rotation().transpose() * g.x0)};
}

Vec2 body_to_inertial(const Element& g, const Vec2& X, Direction direction) {
  if (direction == Direction::inverse) {
    return g.rotation().transpose() * (X - g.x0);
  }
  return g.rotation() * X + g.x0;
}

Element exp(const Algebra& xi, double dt) {
  const double theta = xi.omega * dt;
  double a;  // sin(theta) / omega
  double b;  // (1 - cos(theta)) / omega
  if (std::abs(theta) < kSmallAngle) {
    a = dt * (1.0 - theta * theta / 6.0);
    b = dt * (theta / 2.0);
  } else {
    a = std::sin(theta) / xi.omega;
    const double half = std::sin(0.5 * theta);
    b = 2.0 * half * half / xi.omega;  // avoids cancellation in 1 - cos
  }
  const Vec2 x0(a * xi.v.x() - b * xi.v.y(), b * xi.v.x() + a * xi.v.y());
  return {normalize_angle(theta), x0};
}

}  // namespace vbody::se2
