#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vbody/types.hpp"

namespace vbody::fluid {

// checked: reject points closer than R(1 + 1e-9) to the center.
// extended: evaluate the closed form anywhere except the origin; meant for
// finite-difference stencils that straddle the boundary.
enum class Domain { checked, extended };

struct Potentials {
  double x = 0.0;
  double y = 0.0;
  double omega = 0.0;
};

// Potentials for unit body velocities along e_x, e_y and e_Omega, body frame.
Potentials elementary_potentials(const Vec2& X, const FluidParams& params,
                                 Domain domain = Domain::checked);

// Harmonic conjugates of the potentials.
Potentials elementary_streams(const Vec2& X, const FluidParams& params,
                              Domain domain = Domain::checked);

// Gradients of (Psi_X, Psi_Y) with respect to X. Row k is grad Psi_k.
Eigen::Matrix2d stream_gradients(const Vec2& X, const FluidParams& params);

// Green's function of the exterior problem, built from the circle theorem.
double green_function(const Vec2& X0, const Vec2& X1,
                      const FluidParams& params,
                      Domain domain = Domain::checked);

// Image part g(X, X) of the Green's function, left after removing the
// singular self-interaction.
double regularized_self(const Vec2& X, const FluidParams& params);

// Gradient of the Green's function in its first argument.
Vec2 green_gradient(const Vec2& X0, const Vec2& X1, const FluidParams& params);
Vec2 regularized_self_gradient(const Vec2& X, const FluidParams& params);

double kirchhoff_routh(const VortexSet& vortices, const FluidParams& params);
std::vector<Vec2> grad_kirchhoff_routh(const VortexSet& vortices,
                                       const FluidParams& params);

// Same, for callers that keep strengths and positions apart.
double kirchhoff_routh(std::span<const double> strengths,
                       std::span<const Vec2> positions,
                       const FluidParams& params);
std::vector<Vec2> grad_kirchhoff_routh(std::span<const double> strengths,
                                       std::span<const Vec2> positions,
                                       const FluidParams& params);

}  // namespace vbody::fluid
