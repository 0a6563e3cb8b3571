#pragma once

#include <span>

#include <Eigen/Dense>

#include "vbody/types.hpp"

namespace vbody::energetics {

struct EffectiveMass {
  double c = 0.0;      // body mass plus added mass pi R^2
  double i_eff = 0.0;  // no added inertia for a circle

  Eigen::Matrix3d matrix() const;
  // Added-mass block diag(0, pi R^2, pi R^2).
  static Eigen::Matrix3d added(double radius);
};

EffectiveMass effective_mass(const BodyParams& body);

double hamiltonian(const ChartState& state, const BodyParams& body,
                   std::span<const double> strengths);

enum class GradientMode { analytic, finite_difference };

// Ordered like ChartState::flat().
Eigen::VectorXd hamiltonian_gradient(
    const ChartState& state, const BodyParams& body,
    std::span<const double> strengths,
    GradientMode mode = GradientMode::analytic);

}  // namespace vbody::energetics
