#pragma once

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "vbody/structures.hpp"
#include "vbody/types.hpp"

// Brute-force references for the tests. Nothing here reuses the closed forms
// it is used to check.
namespace vbody::oracle {

struct FdSpec {
  double h = 1e-5;
  int order = 4;  // 2, 4 or 6
};

using ScalarField = std::function<double(const Eigen::VectorXd&)>;
using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

Eigen::VectorXd fd_gradient(const ScalarField& f, const Eigen::VectorXd& point,
                            FdSpec spec = {});
// Column k holds d F / d x_k.
Eigen::MatrixXd fd_jacobian(const VectorField& f, const Eigen::VectorXd& point,
                            FdSpec spec = {});

// Velocity induced at X by the images of a vortex of strength gamma outside
// a circle of radius R: -gamma at the inverse point and +gamma at the center.
Vec2 image_vortex_velocity(const Vec2& X, double gamma, double R);

// Max |D(S^-1) Lambda_SMBK D(S^-1)^T - Lambda_target| over the (V, X) block,
// both sides taken at the same physical point. The target defaults to the
// published BMR entries.
enum class Target { published, consistent };

double pushforward_check(const ChartState& bmr, const BodyParams& body,
                         std::span<const double> strengths,
                         structures::Signs signs = {},
                         Target target = Target::published);

}  // namespace vbody::oracle
