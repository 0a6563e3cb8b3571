#include "vbody/fluid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace vbody::fluid {

namespace {

constexpr double kInvFourPi = 0.25 / std::numbers::pi;

void check_exterior(const Vec2& X, const FluidParams& params, Domain domain) {
  const double r = X.norm();
  if (domain == Domain::extended) {
    if (r == 0.0) throw DomainError("fluid: evaluation at the body center");
    return;
  }
  if (!(r >= params.radius * (1.0 + 1e-9))) {
    std::ostringstream msg;
    msg << "fluid: point (" << X.x() << ", " << X.y()
        << ") is not outside the body of radius " << params.radius;
    throw DomainError(msg.str());
  }
}

// Image of Y in the circle.
Vec2 image_point(const Vec2& Y, double R) { return (R * R / Y.squaredNorm()) * Y; }

}  // namespace

Potentials elementary_potentials(const Vec2& X, const FluidParams& params,
                                 Domain domain) {
  check_exterior(X, params, domain);
  const double k = params.radius * params.radius / X.squaredNorm();
  return {-k * X.x(), -k * X.y(), 0.0};
}

Potentials elementary_streams(const Vec2& X, const FluidParams& params,
                              Domain domain) {
  check_exterior(X, params, domain);
  const double k = params.radius * params.radius / X.squaredNorm();
  return {k * X.y(), -k * X.x(), 0.0};
}

Eigen::Matrix2d stream_gradients(const Vec2& X, const FluidParams& params) {
  check_exterior(X, params, Domain::checked);
  const double R2 = params.radius * params.radius;
  const double r4 = X.squaredNorm() * X.squaredNorm();
  const double xy = X.x() * X.y();
  const double d = X.x() * X.x() - X.y() * X.y();
  Eigen::Matrix2d g;
  g << -2.0 * R2 * xy / r4, R2 * d / r4,
       R2 * d / r4, 2.0 * R2 * xy / r4;
  return g;
}

double green_function(const Vec2& X0, const Vec2& X1,
                      const FluidParams& params, Domain domain) {
  check_exterior(X0, params, domain);
  check_exterior(X1, params, domain);
  const double sep = (X0 - X1).squaredNorm();
  if (sep == 0.0) throw DomainError("green_function: coincident points");
  const double g = kInvFourPi * (std::log(X0.squaredNorm()) -
                                 std::log((X0 - image_point(X1, params.radius))
                                              .squaredNorm()));
  return g + kInvFourPi * std::log(sep);
}

double regularized_self(const Vec2& X, const FluidParams& params) {
  check_exterior(X, params, Domain::checked);
  const double r2 = X.squaredNorm();
  const double R2 = params.radius * params.radius;
  return 2.0 * kInvFourPi * std::log(r2 / (r2 - R2));
}

Vec2 green_gradient(const Vec2& X0, const Vec2& X1, const FluidParams& params) {
  check_exterior(X0, params, Domain::checked);
  check_exterior(X1, params, Domain::checked);
  const Vec2 sep = X0 - X1;
  if (sep.squaredNorm() == 0.0) {
    throw DomainError("green_gradient: coincident points");
  }
  const Vec2 to_image = X0 - image_point(X1, params.radius);
  return 2.0 * kInvFourPi *
         (X0 / X0.squaredNorm() - to_image / to_image.squaredNorm() +
          sep / sep.squaredNorm());
}

Vec2 regularized_self_gradient(const Vec2& X, const FluidParams& params) {
  check_exterior(X, params, Domain::checked);
  const double r2 = X.squaredNorm();
  const double R2 = params.radius * params.radius;
  return 4.0 * kInvFourPi * (1.0 / r2 - 1.0 / (r2 - R2)) * X;
}

double kirchhoff_routh(std::span<const double> strengths,
                       std::span<const Vec2> positions,
                       const FluidParams& params) {
  double w = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      w += strengths[i] * strengths[j] *
           green_function(positions[i], positions[j], params);
    }
    w += 0.5 * strengths[i] * strengths[i] *
         regularized_self(positions[i], params);
  }
  return w;
}

std::vector<Vec2> grad_kirchhoff_routh(std::span<const double> strengths,
                                       std::span<const Vec2> positions,
                                       const FluidParams& params) {
  const std::size_t n = positions.size();
  std::vector<Vec2> grad(n, Vec2::Zero());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      // G is symmetric, so both argument slots differentiate alike.
      grad[k] += strengths[k] * strengths[j] *
                 green_gradient(positions[k], positions[j], params);
    }
    grad[k] += 0.5 * strengths[k] * strengths[k] *
               regularized_self_gradient(positions[k], params);
  }
  return grad;
}

double kirchhoff_routh(const VortexSet& vortices, const FluidParams& params) {
  return kirchhoff_routh(vortices.strengths, vortices.positions, params);
}

std::vector<Vec2> grad_kirchhoff_routh(const VortexSet& vortices,
                                       const FluidParams& params) {
  return grad_kirchhoff_routh(vortices.strengths, vortices.positions, params);
}

}  // namespace vbody::fluid
