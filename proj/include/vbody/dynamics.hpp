#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vbody/se2.hpp"
#include "vbody/types.hpp"

namespace vbody::dynamics {

enum class Integrator { rk4, midpoint };

const char* to_string(Integrator integrator);

struct SimConfig {
  Chart chart = Chart::bmr;
  BodyParams body;
  VortexSet vortices;
  // (A, Lx, Ly) or (Omega, Vx, Vy) depending on `chart`.
  Eigen::Vector3d initial_body = Eigen::Vector3d::Zero();
  se2::Element initial_pose;
  double t0 = 0.0;
  Integrator integrator = Integrator::rk4;
  double dt = 1e-3;
  double t_end = 1.0;
  std::size_t stride = 1;
  // Absolute clearance; non-positive means 1e-3 R.
  double clearance = 0.0;

  double effective_clearance() const;
  ChartState initial_state() const;
  // Throws DomainError naming the offending field.
  void validate() const;
};

// Rejects states closer than `clearance` to the body or to each other.
void check_clearance(const ChartState& state, const BodyParams& body,
                     double clearance);

// Lambda(state) grad H(state). Throws ClearanceViolation when clearance > 0
// and the state is too close to a collision.
Eigen::VectorXd rhs(const ChartState& state, const BodyParams& body,
                    std::span<const double> strengths, double clearance = 0.0);

// Body velocity (Omega, V) in either chart.
se2::Algebra body_velocity(const ChartState& state, const BodyParams& body,
                           std::span<const double> strengths);

enum class HaltReason { none, body_contact, vortex_contact, no_convergence };

const char* to_string(HaltReason reason);

struct Halt {
  HaltReason reason = HaltReason::none;
  double time = 0.0;
  std::size_t index = 0;
  std::size_t other = 0;
  std::string message;
};

struct Trajectory {
  Chart chart = Chart::bmr;
  std::vector<double> times;
  std::vector<ChartState> states;
  std::vector<se2::Element> poses;
  std::vector<std::vector<Vec2>> inertial_positions;
  std::vector<double> energy;
  std::vector<double> casimir;   // Lx^2 + Ly^2
  std::vector<double> l_drift;   // |L - L0|
  std::optional<Halt> halt;

  std::size_t size() const { return times.size(); }
};

Trajectory integrate(const SimConfig& config);

// Pose after one step of length dt from `g`: an exact screw motion with the
// body velocity at the middle of the step.
se2::Element advance_pose(const se2::Element& g, const se2::Algebra& mid,
                          double dt);

struct Reconstruction {
  std::vector<se2::Element> poses;
  std::vector<std::vector<Vec2>> inertial_positions;
};

// Integrates g' = g xi over a sampled velocity series, one exact screw
// motion per interval with the interval's midpoint xi (mean of the ends).
Reconstruction reconstruct(std::span<const double> times,
                           std::span<const se2::Algebra> velocities,
                           std::span<const std::vector<Vec2>> body_positions,
                           const se2::Element& g0);

struct Report {
  double max_relative_energy_drift = 0.0;
  double max_casimir_drift = 0.0;
  double max_l_drift = 0.0;
  // Casimir and L are invariants only when the total strength vanishes.
  bool momentum_invariant = false;
  double min_body_clearance = std::numeric_limits<double>::infinity();
  double min_vortex_distance = std::numeric_limits<double>::infinity();
};

Report diagnostics(const Trajectory& trajectory, const BodyParams& body,
                   std::span<const double> strengths);

}  // namespace vbody::dynamics
