#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vbody/se2.hpp"
#include "vbody/types.hpp"

namespace vbody::maps {

// phi(e, X): momentum-map offset of the vortices at the identity pose.
se2::Costate bg_potential(const VortexSet& vortices, const FluidParams& params);

// d phi_a / d X_i for vortex i; row a follows se2::Basis.
Eigen::Matrix<double, 3, 2> bg_potential_gradient(double strength,
                                                  const Vec2& X,
                                                  const FluidParams& params);

// BMR -> SMBK. Vortex coordinates pass through unchanged.
ChartState shift_map(const ChartState& bmr, const BodyParams& body,
                     std::span<const double> strengths);
ChartState inverse_shift_map(const ChartState& smbk, const BodyParams& body,
                             std::span<const double> strengths);

// Jacobians in the flat layout.
Eigen::MatrixXd shift_jacobian(const ChartState& bmr, const BodyParams& body,
                               std::span<const double> strengths);
Eigen::MatrixXd inverse_shift_jacobian(const ChartState& smbk,
                                       const BodyParams& body,
                                       std::span<const double> strengths);

// Body momentum map J(X) = Pi - phi(e, X) with Pi the body momentum (A, L
// after the shift are exactly these values).
se2::Costate body_momentum_map(const se2::Costate& pi,
                               const VortexSet& vortices,
                               const FluidParams& params);

// Spatial momentum map evaluated directly from the pose, the body momentum
// Pi and body-frame vortex positions.
se2::Costate momentum_map(const se2::Element& pose, const se2::Costate& pi,
                          const VortexSet& vortices, const FluidParams& params);

// Spatial momentum from body momentum-map values.
se2::Costate relation(const se2::Element& pose, const se2::Costate& body,
                      double gamma_total);

// Tangent vector at the identity pose: body part (omega, translation t) and
// one velocity per vortex.
struct Tangent {
  se2::Algebra body;
  std::vector<Vec2> vortex;
};

// Infinitesimal generator of xi at the identity pose.
Tangent generator(const se2::Algebra& xi, const VortexSet& vortices);

// Magnetic two-form on a pair of tangent vectors at the identity pose.
double magnetic_form(const Tangent& a, const Tangent& b,
                     const VortexSet& vortices, const FluidParams& params);

// beta(e_a~, e_b~) on generators.
double magnetic_pairing(se2::Basis a, se2::Basis b, const VortexSet& vortices,
                        const FluidParams& params);

class CocycleForm {
 public:
  CocycleForm(double omega_x, double omega_y, double x_y);

  double omega_x() const { return omega_x_; }
  double omega_y() const { return omega_y_; }
  double x_y() const { return x_y_; }
  double operator()(se2::Basis a, se2::Basis b) const;

 private:
  double omega_x_;
  double omega_y_;
  double x_y_;
};

CocycleForm cocycle_sigma(const VortexSet& vortices, const FluidParams& params);

}  // namespace vbody::maps
