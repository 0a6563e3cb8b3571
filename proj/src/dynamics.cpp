#include "vbody/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vbody/energetics.hpp"
#include "vbody/maps.hpp"
#include "vbody/structures.hpp"

namespace vbody::dynamics {

namespace {

constexpr double kMidpointTol = 1e-12;
constexpr int kMidpointSweeps = 50;

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Flat = Eigen::VectorXd;

struct Model {
  Chart chart;
  const BodyParams& body;
  std::span<const double> strengths;
  double clearance;

  Flat operator()(const Flat& y) const {
    return rhs(ChartState::from_flat(chart, y), body, strengths, clearance);
  }
};

Flat step_rk4(const Model& f, const Flat& y, const Flat& k1, double dt) {
  const Flat k2 = f(y + 0.5 * dt * k1);
  const Flat k3 = f(y + 0.5 * dt * k2);
  const Flat k4 = f(y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Flat step_midpoint(const Model& f, const Flat& y, const Flat& dy, double dt) {
  Flat next = y + dt * dy;
  for (int sweep = 0; sweep < kMidpointSweeps; ++sweep) {
    const Flat update = y + dt * f(0.5 * (y + next));
    const double change = (update - next).lpNorm<Eigen::Infinity>();
    next = update;
    if (change <= kMidpointTol * (1.0 + next.lpNorm<Eigen::Infinity>())) {
      return next;
    }
  }
  throw NoConvergence("implicit midpoint: fixed-point iteration did not converge");
}

Vec2 momentum_of(const ChartState& s, const BodyParams& body,
                 std::span<const double> strengths) {
  if (s.chart == Chart::smbk) return s.body.tail<2>();
  return maps::shift_map(s, body, strengths).body.tail<2>();
}

std::vector<Vec2> to_inertial(const se2::Element& g,
                              const std::vector<Vec2>& positions) {
  std::vector<Vec2> out;
  out.reserve(positions.size());
  for (const Vec2& X : positions) out.push_back(se2::body_to_inertial(g, X));
  return out;
}

}  // namespace

const char* to_string(Integrator integrator) {
  return integrator == Integrator::rk4 ? "rk4" : "midpoint";
}

const char* to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::none:
      return "none";
    case HaltReason::body_contact:
      return "body_contact";
    case HaltReason::vortex_contact:
      return "vortex_contact";
    case HaltReason::no_convergence:
      return "no_convergence";
  }
  return "unknown";
}

double SimConfig::effective_clearance() const {
  return clearance > 0.0 ? clearance : 1e-3 * body.radius;
}

ChartState SimConfig::initial_state() const {
  return {chart, initial_body, vortices.positions};
}

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt: must be positive");
  if (!std::isfinite(t0)) throw DomainError("t0: must be finite");
  if (!(t_end >= t0) || !std::isfinite(t_end)) {
    throw DomainError("t_end: must be finite and not before t0");
  }
  if (stride == 0) throw DomainError("stride: must be at least 1");
  if (!(clearance >= 0.0)) throw DomainError("clearance: must be positive");
  if (!(body.mass > 0.0)) throw DomainError("body.mass: must be positive");
  if (!(body.inertia > 0.0)) throw DomainError("body.inertia: must be positive");
  if (!(body.radius > 0.0)) throw DomainError("body.radius: must be positive");
  if (!initial_body.allFinite()) throw DomainError("initial state: must be finite");
  vortices.validate(body.fluid());
  check_clearance(initial_state(), body, effective_clearance());
}

void check_clearance(const ChartState& state, const BodyParams& body,
                     double clearance) {
  const auto& X = state.positions;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (!X[i].allFinite() || X[i].norm() - body.radius < clearance) {
      std::ostringstream msg;
      msg << "vortex " << i << " reached the body (clearance "
          << X[i].norm() - body.radius << ")";
      throw ClearanceViolation(msg.str(), i);
    }
  }
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if ((X[i] - X[j]).norm() < clearance) {
        std::ostringstream msg;
        msg << "vortices " << j << " and " << i << " collided (distance "
            << (X[i] - X[j]).norm() << ")";
        throw ClearanceViolation(msg.str(), i, j);
      }
    }
  }
}

Eigen::VectorXd rhs(const ChartState& state, const BodyParams& body,
                    std::span<const double> strengths, double clearance) {
  if (clearance > 0.0) check_clearance(state, body, clearance);
  const Eigen::VectorXd grad =
      energetics::hamiltonian_gradient(state, body, strengths);
  const structures::StructureMatrix lambda =
      state.chart == Chart::smbk
          ? structures::smbk_structure_matrix(state, strengths)
          : structures::bmr_structure_matrix(state, strengths, body);
  return lambda.apply(grad);
}

se2::Algebra body_velocity(const ChartState& state, const BodyParams& body,
                           std::span<const double> strengths) {
  const ChartState v = state.chart == Chart::bmr
                           ? state
                           : maps::inverse_shift_map(state, body, strengths);
  return {v.body[0], v.body.tail<2>()};
}

se2::Element advance_pose(const se2::Element& g, const se2::Algebra& mid,
                          double dt) {
  return se2::compose(g, se2::exp(mid, dt));
}

Reconstruction reconstruct(std::span<const double> times,
                           std::span<const se2::Algebra> velocities,
                           std::span<const std::vector<Vec2>> body_positions,
                           const se2::Element& g0) {
  if (times.size() != velocities.size() ||
      (!body_positions.empty() && body_positions.size() != times.size())) {
    throw DomainError("reconstruct: series lengths differ");
  }
  Reconstruction out;
  se2::Element g = g0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k > 0) {
      const se2::Algebra& a = velocities[k - 1];
      const se2::Algebra& b = velocities[k];
      g = advance_pose(g, {0.5 * (a.omega + b.omega), 0.5 * (a.v + b.v)},
                       times[k] - times[k - 1]);
    }
    out.poses.push_back(g);
    if (!body_positions.empty()) {
      out.inertial_positions.push_back(to_inertial(g, body_positions[k]));
    }
  }
  return out;
}

Trajectory integrate(const SimConfig& config) {
  config.validate();
  const BodyParams& body = config.body;
  const std::span<const double> strengths = config.vortices.strengths;
  const double eps = config.effective_clearance();
  const Model model{config.chart, body, strengths, eps};

  Trajectory traj;
  traj.chart = config.chart;
  const ChartState s0 = config.initial_state();
  const Vec2 l0 = momentum_of(s0, body, strengths);

  auto record = [&](double t, const ChartState& s, const se2::Element& g) {
    const Vec2 l = momentum_of(s, body, strengths);
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.poses.push_back(g);
    traj.inertial_positions.push_back(to_inertial(g, s.positions));
    traj.energy.push_back(energetics::hamiltonian(s, body, strengths));
    traj.casimir.push_back(l.squaredNorm());
    traj.l_drift.push_back((l - l0).norm());
  };

  const double span_t = config.t_end - config.t0;
  const auto steps = static_cast<std::size_t>(
      std::max(0.0, std::ceil(span_t / config.dt - 1e-9)));

  Flat y = s0.flat();
  Flat dy = model(y);
  se2::Element g = config.initial_pose;
  record(config.t0, s0, g);
  bool last_recorded = true;

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = config.t0 + static_cast<double>(k) * config.dt;
    const double t_next = k + 1 == steps
                              ? config.t_end
                              : config.t0 + static_cast<double>(k + 1) * config.dt;
    const double h = t_next - t;
    try {
      const Flat next = config.integrator == Integrator::rk4
                            ? step_rk4(model, y, dy, h)
                            : step_midpoint(model, y, dy, h);
      const ChartState s = ChartState::from_flat(config.chart, next);
      const Flat dnext = model(next);
      // Cubic Hermite interpolant of the state at the half step.
      const Flat mid = 0.5 * (y + next) + (h / 8.0) * (dy - dnext);
      g = advance_pose(
          g, body_velocity(ChartState::from_flat(config.chart, mid), body, strengths), h);
      y = next;
      dy = dnext;
      last_recorded = (k + 1) % config.stride == 0 || k + 1 == steps;
      if (last_recorded) record(t_next, s, g);
    } catch (const ClearanceViolation& e) {
      if (!last_recorded) record(t, ChartState::from_flat(config.chart, y), g);
      traj.halt = Halt{e.other() == ClearanceViolation::npos
                           ? HaltReason::body_contact
                           : HaltReason::vortex_contact,
                       t, e.index(),
                       e.other() == ClearanceViolation::npos ? 0 : e.other(),
                       e.what()};
      break;
    } catch (const NoConvergence& e) {
      if (!last_recorded) record(t, ChartState::from_flat(config.chart, y), g);
      traj.halt = Halt{HaltReason::no_convergence, t, 0, 0, e.what()};
      break;
    }
  }
  return traj;
}

Report diagnostics(const Trajectory& trajectory, const BodyParams& body,
                   std::span<const double> strengths) {
  if (trajectory.size() == 0) throw DomainError("diagnostics: empty trajectory");
  Report r;
  const double h0 = trajectory.energy.front();
  const double scale = h0 != 0.0 ? std::abs(h0) : 1.0;
  const double c0 = trajectory.casimir.front();
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    r.max_relative_energy_drift = std::max(
        r.max_relative_energy_drift, std::abs(trajectory.energy[k] - h0) / scale);
    r.max_casimir_drift =
        std::max(r.max_casimir_drift, std::abs(trajectory.casimir[k] - c0));
    r.max_l_drift = std::max(r.max_l_drift, trajectory.l_drift[k]);
    const auto& X = trajectory.states[k].positions;
    for (std::size_t i = 0; i < X.size(); ++i) {
      r.min_body_clearance = std::min(r.min_body_clearance, X[i].norm() - body.radius);
      for (std::size_t j = 0; j < i; ++j) {
        r.min_vortex_distance = std::min(r.min_vortex_distance, (X[i] - X[j]).norm());
      }
    }
  }
  double gamma = 0.0;
  double magnitude = 0.0;
  for (double g : strengths) {
    gamma += g;
    magnitude += std::abs(g);
  }
  r.momentum_invariant = std::abs(gamma) <= 1e-14 * magnitude;
  return r;
}

}  // namespace vbody::dynamics
