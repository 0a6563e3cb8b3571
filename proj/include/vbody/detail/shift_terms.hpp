#pragma once

#include <span>

#include <Eigen/Dense>

#include "vbody/types.hpp"

namespace vbody::detail {

// Per-vortex shift of the translational momentum:
// h(X) = X x e3 + R^2 e3 x X / |X|^2 = (1 - R^2/|X|^2)(Y, -X).
inline Vec2 shift_term(const Vec2& X, double R) {
  const double k = 1.0 - R * R / X.squaredNorm();
  return k * Vec2(X.y(), -X.x());
}

// d h / d X, rows are components of h.
inline Eigen::Matrix2d shift_term_jacobian(const Vec2& X, double R) {
  const double R2 = R * R;
  const double r4 = X.squaredNorm() * X.squaredNorm();
  const double xy = X.x() * X.y();
  const double d = X.x() * X.x() - X.y() * X.y();
  Eigen::Matrix2d j;
  j << 2.0 * R2 * xy / r4, (r4 - R2 * d) / r4,
       -(r4 + R2 * d) / r4, -2.0 * R2 * xy / r4;
  return j;
}

inline Vec2 total_shift(std::span<const double> strengths,
                        std::span<const Vec2> positions, double R) {
  Vec2 f = Vec2::Zero();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    f += strengths[i] * shift_term(positions[i], R);
  }
  return f;
}

// Sum Gamma_i |X_i|^2 / 2, the vortex part of the angular momentum.
inline double angular_shift(std::span<const double> strengths,
                            std::span<const Vec2> positions) {
  double s = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    s += 0.5 * strengths[i] * positions[i].squaredNorm();
  }
  return s;
}

inline void check_strengths(std::span<const double> strengths,
                            std::size_t n) {
  if (strengths.size() != n) {
    throw DomainError("number of strengths does not match the state");
  }
  for (double g : strengths) {
    if (g == 0.0) throw DomainError("vortex strength must be nonzero");
  }
}

}  // namespace vbody::detail
