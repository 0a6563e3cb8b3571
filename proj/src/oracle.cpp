#include "vbody/oracle.hpp"

#include <cmath>
#include <numbers>

#include "vbody/maps.hpp"

namespace vbody::oracle {

namespace {

// Central-difference weights for offsets 1..order/2 (divided by h).
std::vector<double> weights(int order) {
  switch (order) {
    case 2:
      return {0.5};
    case 4:
      return {8.0 / 12.0, -1.0 / 12.0};
    case 6:
      return {45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0};
    default:
      throw DomainError("fd: order must be 2, 4 or 6");
  }
}

Vec2 point_vortex(const Vec2& x, const Vec2& p, double gamma) {
  const Vec2 d = x - p;
  return gamma / (2.0 * std::numbers::pi) * Vec2(-d.y(), d.x()) / d.squaredNorm();
}

}  // namespace

Eigen::VectorXd fd_gradient(const ScalarField& f, const Eigen::VectorXd& point,
                            FdSpec spec) {
  if (!(spec.h > 0.0)) throw DomainError("fd: step must be positive");
  const std::vector<double> w = weights(spec.order);
  Eigen::VectorXd g(point.size());
  for (Eigen::Index k = 0; k < point.size(); ++k) {
    double acc = 0.0;
    for (std::size_t m = 1; m <= w.size(); ++m) {
      Eigen::VectorXd xp = point;
      Eigen::VectorXd xm = point;
      xp[k] += static_cast<double>(m) * spec.h;
      xm[k] -= static_cast<double>(m) * spec.h;
      acc += w[m - 1] * (f(xp) - f(xm));
    }
    g[k] = acc / spec.h;
  }
  return g;
}

Eigen::MatrixXd fd_jacobian(const VectorField& f, const Eigen::VectorXd& point,
                            FdSpec spec) {
  if (!(spec.h > 0.0)) throw DomainError("fd: step must be positive");
  const std::vector<double> w = weights(spec.order);
  Eigen::MatrixXd J;
  for (Eigen::Index k = 0; k < point.size(); ++k) {
    Eigen::VectorXd acc;
    for (std::size_t m = 1; m <= w.size(); ++m) {
      Eigen::VectorXd xp = point;
      Eigen::VectorXd xm = point;
      xp[k] += static_cast<double>(m) * spec.h;
      xm[k] -= static_cast<double>(m) * spec.h;
      const Eigen::VectorXd diff = w[m - 1] * (f(xp) - f(xm));
      acc = m == 1 ? diff : Eigen::VectorXd(acc + diff);
    }
    if (k == 0) J.resize(acc.size(), point.size());
    J.col(k) = acc / spec.h;
  }
  return J;
}

Vec2 image_vortex_velocity(const Vec2& X, double gamma, double R) {
  const double d2 = X.squaredNorm();
  if (!(d2 > R * R)) throw DomainError("image_vortex_velocity: point inside body");
  const Vec2 inverse_point = (R * R / d2) * X;
  return point_vortex(X, inverse_point, -gamma) + point_vortex(X, Vec2::Zero(), gamma);
}

double pushforward_check(const ChartState& bmr, const BodyParams& body,
                         std::span<const double> strengths,
                         structures::Signs signs, Target target) {
  const ChartState smbk = maps::shift_map(bmr, body, strengths);
  const Eigen::MatrixXd J = maps::inverse_shift_jacobian(smbk, body, strengths);
  const Eigen::MatrixXd pushed =
      J * structures::smbk_structure_matrix(smbk, strengths, signs).dense() *
      J.transpose();
  const Eigen::MatrixXd expected =
      target == Target::published
          ? structures::bmr_published_block(bmr, strengths, body).dense()
          : structures::bmr_structure_matrix(bmr, strengths, body).dense();
  const Eigen::Index d = pushed.rows();
  return (pushed.bottomRightCorner(d - 1, d - 1) -
          expected.bottomRightCorner(d - 1, d - 1))
      .lpNorm<Eigen::Infinity>();
}

}  // namespace vbody::oracle
