#pragma once

#include <Eigen/Dense>

#include "vbody/types.hpp"

namespace vbody::se2 {

// Wraps an angle to (-pi, pi].
double normalize_angle(double beta);

struct Element {
  double beta = 0.0;
  Vec2 x0 = Vec2::Zero();

  static Element identity() { return {}; }
  Eigen::Matrix2d rotation() const;
  Eigen::Matrix3d matrix() const;
};

struct Algebra {
  double omega = 0.0;
  Vec2 v = Vec2::Zero();
};

struct Costate {
  double pi_omega = 0.0;
  Vec2 pi_xy = Vec2::Zero();
};

enum class Basis { omega = 0, x = 1, y = 2 };

// Lie bracket [xi, eta] on se(2).
Algebra bracket(const Algebra& xi, const Algebra& eta);
Algebra basis_vector(Basis b);
double pair(const Costate& mu, const Algebra& xi);

Element compose(const Element& g1, const Element& g2);
Element inverse(const Element& g);

enum class Direction { forward, inverse };

// forward: R X + x0. inverse: R^T (x - x0).
Vec2 body_to_inertial(const Element& g, const Vec2& X,
                      Direction direction = Direction::forward);

// Flow of g' = g xi for constant xi over dt, starting at the identity.
Element exp(const Algebra& xi, double dt);

}  // namespace vbody::se2
