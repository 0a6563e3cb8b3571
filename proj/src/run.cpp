#include "vbody/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "vbody/energetics.hpp"
#include "vbody/maps.hpp"
#include "vbody/oracle.hpp"
#include "vbody/structures.hpp"

namespace vbody::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_rows(std::ostream& out, const dynamics::Trajectory& traj,
                std::size_t first) {
  for (std::size_t k = first; k < traj.size(); ++k) {
    const ChartState& s = traj.states[k];
    out << fmt17(traj.times[k]);
    for (int i = 0; i < 3; ++i) out << ',' << fmt17(s.body[i]);
    for (const Vec2& X : s.positions) out << ',' << fmt17(X.x()) << ',' << fmt17(X.y());
    const se2::Element& g = traj.poses[k];
    out << ',' << fmt17(g.beta) << ',' << fmt17(g.x0.x()) << ',' << fmt17(g.x0.y());
    for (const Vec2& x : traj.inertial_positions[k]) {
      out << ',' << fmt17(x.x()) << ',' << fmt17(x.y());
    }
    out << ',' << fmt17(traj.energy[k]) << ',' << fmt17(traj.casimir[k]) << ','
        << fmt17(traj.l_drift[k]) << '\n';
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

// Orbit of a lone vortex compared with the image-system velocity.
void orbit_report(std::ostream& out, const dynamics::Trajectory& traj,
                  const dynamics::SimConfig& config) {
  if (config.vortices.size() != 1 || traj.size() < 2) return;
  const double r0 = traj.states.front().positions[0].norm();
  double radius_drift = 0.0;
  double unwrapped = 0.0;
  double previous = std::atan2(traj.states.front().positions[0].y(),
                               traj.states.front().positions[0].x());
  for (const ChartState& s : traj.states) {
    radius_drift = std::max(radius_drift, std::abs(s.positions[0].norm() - r0));
    const double angle = std::atan2(s.positions[0].y(), s.positions[0].x());
    unwrapped += std::remainder(angle - previous, 2.0 * std::numbers::pi);
    previous = angle;
  }
  const double elapsed = traj.times.back() - traj.times.front();
  const double measured = std::abs(unwrapped) / elapsed;
  const Vec2 image = oracle::image_vortex_velocity(
      traj.states.front().positions[0], config.vortices.strengths[0],
      config.body.radius);
  const double expected = image.norm() / r0;
  out << "orbit_radius_drift " << fmt17(radius_drift) << '\n'
      << "orbit_angular_speed " << fmt17(measured) << '\n'
      << "image_angular_speed " << fmt17(expected) << '\n'
      << "angular_speed_rel_error " << fmt17(std::abs(measured - expected) / expected)
      << '\n';
}

}  // namespace

std::string csv_header(Chart chart, std::size_t vortices) {
  std::ostringstream h;
  h << "t," << (chart == Chart::smbk ? "A,Lx,Ly" : "Omega,Vx,Vy");
  for (std::size_t i = 1; i <= vortices; ++i) h << ",X" << i << ",Y" << i;
  h << ",beta,x0_x,x0_y";
  for (std::size_t i = 1; i <= vortices; ++i) h << ",x" << i << ",y" << i;
  h << ",H,casimir,L_drift";
  return h.str();
}

Scenario resume_from(const Scenario& scenario, const fs::path& csv) {
  std::ifstream in(csv);
  if (!in) throw ConfigError(csv.string() + ": cannot open trajectory");
  std::string header;
  std::getline(in, header);
  const auto& c0 = scenario.config;
  if (header != csv_header(c0.chart, c0.vortices.size())) {
    throw ConfigError(csv.string() + ": header does not match the scenario");
  }
  std::string line;
  std::string last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  if (last.empty()) throw ConfigError(csv.string() + ": no data rows");
  const std::vector<std::string> cells = split(last);
  const std::size_t n = c0.vortices.size();
  if (cells.size() != 7 + 4 * n + 3) {
    throw ConfigError(csv.string() + ": malformed last row");
  }
  std::vector<double> v;
  for (const std::string& cell : cells) v.push_back(std::stod(cell));
  Scenario s = scenario;
  dynamics::SimConfig& c = s.config;
  c.t0 = v[0];
  c.initial_body = Eigen::Vector3d(v[1], v[2], v[3]);
  for (std::size_t i = 0; i < n; ++i) {
    c.vortices.positions[i] = Vec2(v[4 + 2 * i], v[5 + 2 * i]);
  }
  const std::size_t p = 4 + 2 * n;
  c.initial_pose = {v[p], Vec2(v[p + 1], v[p + 2])};
  return s;
}

RunResult run(const Scenario& scenario, const fs::path& out_dir,
              const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  RunResult result;
  result.csv = out_dir / "trajectory.csv";

  const Scenario active =
      options.resume && fs::exists(result.csv) ? resume_from(scenario, result.csv)
                                               : scenario;
  const bool appending = options.resume && fs::exists(result.csv);
  const dynamics::SimConfig& config = active.config;
  const dynamics::Trajectory traj = dynamics::integrate(config);

  {
    std::ofstream csv(result.csv, appending ? std::ios::app : std::ios::trunc);
    if (!csv) throw std::runtime_error(result.csv.string() + ": cannot write");
    if (!appending) csv << csv_header(config.chart, config.vortices.size()) << '\n';
    // The first sample of a resumed run repeats the last stored row.
    write_rows(csv, traj, appending ? 1 : 0);
    if (!csv) throw std::runtime_error(result.csv.string() + ": write failed");
  }

  const dynamics::Report report =
      dynamics::diagnostics(traj, config.body, config.vortices.strengths);
  std::ostringstream summary;
  summary << "scenario " << active.name << '\n'
          << "chart " << to_string(config.chart) << '\n'
          << "integrator " << dynamics::to_string(config.integrator) << '\n'
          << "dt " << fmt17(config.dt) << '\n'
          << "t_start " << fmt17(traj.times.front()) << '\n'
          << "t_last " << fmt17(traj.times.back()) << '\n'
          << "samples " << traj.size() << '\n'
          << "max_rel_H_drift " << fmt17(report.max_relative_energy_drift) << '\n'
          << "max_casimir_drift " << fmt17(report.max_casimir_drift) << '\n'
          << "max_L_drift " << fmt17(report.max_l_drift) << '\n'
          << "momentum_invariant " << (report.momentum_invariant ? "yes" : "no")
          << '\n'
          << "min_body_clearance " << fmt17(report.min_body_clearance) << '\n'
          << "min_vortex_distance " << fmt17(report.min_vortex_distance) << '\n';
  orbit_report(summary, traj, config);
  if (traj.halt) {
    summary << "halt " << dynamics::to_string(traj.halt->reason) << " at t="
            << fmt17(traj.halt->time) << ": " << traj.halt->message << '\n';
    result.exit_code = traj.halt->reason == dynamics::HaltReason::no_convergence
                           ? kNoConvergence
                           : kCollision;
  } else {
    summary << "halt none\n";
  }
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
  summary << "wall_time_s " << wall << '\n';
  result.summary = summary.str();
  std::ofstream(out_dir / "summary.txt") << result.summary;
  return result;
}

std::vector<VerifyRow> verify(unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(1.5, 3.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> strength(0.5, 2.0);

  struct Sample {
    BodyParams body;
    std::vector<double> gamma;
    ChartState bmr;
  };
  auto sample = [&](std::size_t n) {
    Sample s;
    s.body = {1.0 + 4.0 * std::abs(unit(rng)), 0.5 + 1.5 * std::abs(unit(rng)), 1.0};
    s.bmr.chart = Chart::bmr;
    s.bmr.body = Eigen::Vector3d(unit(rng), unit(rng), unit(rng));
    for (std::size_t i = 0; i < n; ++i) {
      const double a = (2.0 * std::numbers::pi * i) / n + 0.5 * unit(rng);
      const double r = radius(rng);
      s.bmr.positions.push_back(Vec2(r * std::cos(a), r * std::sin(a)));
      s.gamma.push_back((unit(rng) < 0 ? -1.0 : 1.0) * strength(rng));
    }
    return s;
  };

  double jac_smbk = 0, jac_bmr = 0, push_consistent = 0, push_published = 0;
  double int_consistent = 0, int_published = 0, sigma_xy = 0, sigma_omega = 0;
  double h_shift = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Sample s = sample(2 + trial % 2);
    const std::vector<double>& g = s.gamma;
    const ChartState smbk = maps::shift_map(s.bmr, s.body, g);
    jac_smbk = std::max(jac_smbk, structures::jacobi_residual(
        [&](const Eigen::VectorXd& x) {
          return structures::smbk_structure_matrix(
              ChartState::from_flat(Chart::smbk, x), g);
        }, smbk.flat()));
    jac_bmr = std::max(jac_bmr, structures::jacobi_residual(
        [&](const Eigen::VectorXd& x) {
          return structures::bmr_structure_matrix(
              ChartState::from_flat(Chart::bmr, x), g, s.body);
        }, s.bmr.flat()));
    push_consistent = std::max(push_consistent, oracle::pushforward_check(
        s.bmr, s.body, g, {}, oracle::Target::consistent));
    push_published = std::max(push_published, oracle::pushforward_check(
        s.bmr, s.body, g, {}, oracle::Target::published));
    const auto mass = energetics::effective_mass(s.body);
    const Eigen::MatrixXd inter =
        structures::interaction_bracket_coefficients(s.bmr, g, s.body).bracket.dense();
    const Eigen::MatrixXd consistent = structures::to_momentum_coordinates(
        structures::bmr_structure_matrix(s.bmr, g, s.body), mass).dense();
    const Eigen::MatrixXd published = structures::to_momentum_coordinates(
        structures::bmr_published_block(s.bmr, g, s.body), mass).dense();
    const Eigen::Index d = inter.rows();
    int_consistent = std::max(int_consistent, (inter - consistent).lpNorm<Eigen::Infinity>());
    int_published = std::max(int_published,
        (inter - published).bottomRightCorner(d - 1, d - 1).lpNorm<Eigen::Infinity>());
    const VortexSet vs{g, s.bmr.positions};
    const maps::CocycleForm sigma = maps::cocycle_sigma(vs, s.body.fluid());
    sigma_xy = std::max(sigma_xy, std::abs(sigma.x_y() + vs.total_strength()));
    sigma_omega = std::max({sigma_omega, std::abs(sigma.omega_x()),
                            std::abs(sigma.omega_y())});
    const double hb = energetics::hamiltonian(s.bmr, s.body, g);
    const double hs = energetics::hamiltonian(smbk, s.body, g);
    h_shift = std::max(h_shift, std::abs(hs - hb) / std::max(1.0, std::abs(hb)));
  }
  auto row = [](std::string name, double value, double tol) {
    return VerifyRow{std::move(name), value, tol, value <= tol};
  };
  return {
      row("jacobi smbk", jac_smbk, 1e-6),
      row("jacobi bmr", jac_bmr, 1e-6),
      row("pushforward vs bmr matrix", push_consistent, 1e-9),
      row("pushforward vs published (V,X) block", push_published, 1e-9),
      row("interaction bracket vs bmr matrix", int_consistent, 1e-10),
      row("interaction bracket vs published entries", int_published, 1e-10),
      row("cocycle Sigma(e_x,e_y) + Gamma", sigma_xy, 1e-12),
      row("cocycle Sigma(e_Omega, .)", sigma_omega, 1e-10),
      row("H_smbk(S z) - H_bmr(z), relative", h_shift, 1e-10),
  };
}

}  // namespace vbody::cli
