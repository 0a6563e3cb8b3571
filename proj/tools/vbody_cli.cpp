// Command-line front end: simulate, verify, sweep.
#include <cstdio>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vbody/cli/run.hpp"
#include "vbody/maps.hpp"

namespace {

using vbody::cli::Scenario;

struct Overrides {
  std::optional<std::string> chart;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::string> integrator;
};

void apply(Scenario& s, const Overrides& o) {
  auto& c = s.config;
  if (o.chart) {
    const vbody::Chart target =
        *o.chart == "smbk" ? vbody::Chart::smbk : vbody::Chart::bmr;
    if (target != c.chart) {
      const vbody::ChartState converted =
          target == vbody::Chart::smbk
              ? vbody::maps::shift_map(c.initial_state(), c.body, c.vortices.strengths)
              : vbody::maps::inverse_shift_map(c.initial_state(), c.body,
                                               c.vortices.strengths);
      c.chart = target;
      c.initial_body = converted.body;
    }
  }
  if (o.dt) c.dt = *o.dt;
  if (o.t_end) c.t_end = *o.t_end;
  if (o.integrator) {
    c.integrator = *o.integrator == "midpoint" ? vbody::dynamics::Integrator::midpoint
                                               : vbody::dynamics::Integrator::rk4;
  }
  c.validate();
}

Scenario load(const std::string& source) {
  const std::string prefix = "preset:";
  if (source.rfind(prefix, 0) == 0) return vbody::cli::preset(source.substr(prefix.size()));
  return vbody::cli::load_config(source);
}

int simulate(const std::string& source, const std::string& out, const Overrides& o,
             bool resume) {
  Scenario s = load(source);
  apply(s, o);
  const auto result = vbody::cli::run(s, out, {resume});
  std::cout << result.summary;
  return result.exit_code;
}

int verify() {
  const auto rows = vbody::cli::verify();
  bool ok = true;
  std::printf("%-44s %-12s %-10s %s\n", "check", "value", "tolerance", "result");
  for (const auto& r : rows) {
    std::printf("%-44s %-12.3e %-10.1e %s\n", r.check.c_str(), r.value, r.tolerance,
                r.pass ? "PASS" : "FAIL");
    ok = ok && r.pass;
  }
  return ok ? vbody::cli::kOk : vbody::cli::kFailure;
}

int sweep(const std::vector<std::string>& sources, const std::string& out,
          const Overrides& o) {
  std::vector<Scenario> scenarios;
  std::map<std::string, int> seen;
  std::vector<std::string> dirs;
  for (const auto& src : sources) {
    Scenario s = load(src);
    apply(s, o);
    const int count = seen[s.name]++;
    dirs.push_back(out + "/" + s.name + (count ? "-" + std::to_string(count) : ""));
    scenarios.push_back(std::move(s));
  }
  std::vector<std::future<vbody::cli::RunResult>> jobs;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      return vbody::cli::run(scenarios[i], dirs[i]);
    }));
  }
  int worst = vbody::cli::kOk;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      const auto r = jobs[i].get();
      std::cout << dirs[i] << " exit " << r.exit_code << '\n';
      worst = std::max(worst, r.exit_code);
    } catch (const std::exception& e) {
      std::cerr << dirs[i] << ": " << e.what() << '\n';
      worst = std::max(worst, static_cast<int>(vbody::cli::kFailure));
    }
  }
  return worst;
}

void add_overrides(CLI::App* app, Overrides& o) {
  app->add_option("--chart", o.chart, "Integrate in this chart")
      ->check(CLI::IsMember({"smbk", "bmr"}));
  app->add_option("--dt", o.dt, "Time step")->check(CLI::PositiveNumber);
  app->add_option("--t-end", o.t_end, "End time");
  app->add_option("--integrator", o.integrator, "rk4 or midpoint")
      ->check(CLI::IsMember({"rk4", "midpoint"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular body and point vortices in an ideal fluid"};
  app.require_subcommand(1);

  std::string source;
  std::string out = "out";
  bool resume = false;
  Overrides sim_overrides;
  auto* sim = app.add_subcommand("simulate", "Integrate one scenario");
  sim->add_option("config", source, "JSON scenario, or preset:<name> (" +
                                        [] {
                                          std::string names;
                                          for (const auto& n : vbody::cli::preset_names()) {
                                            names += (names.empty() ? "" : ", ") + n;
                                          }
                                          return names;
                                        }() + ")")
      ->required();
  sim->add_option("--out", out, "Output directory")->required();
  sim->add_flag("--resume", resume, "Continue from the last row of trajectory.csv");
  add_overrides(sim, sim_overrides);

  app.add_subcommand("verify", "Run the structure certification table");

  std::vector<std::string> sources;
  std::string sweep_out = "sweep";
  Overrides sweep_overrides;
  auto* sw = app.add_subcommand("sweep", "Run several scenarios concurrently");
  sw->add_option("configs", sources, "JSON scenarios or preset:<name>")->required();
  sw->add_option("--out", sweep_out, "Parent output directory");
  add_overrides(sw, sweep_overrides);

  CLI11_PARSE(app, argc, argv);
  try {
    if (sim->parsed()) return simulate(source, out, sim_overrides, resume);
    if (sw->parsed()) return sweep(sources, sweep_out, sweep_overrides);
    return verify();
  } catch (const vbody::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return vbody::cli::kUsage;
  } catch (const vbody::DomainError& e) {
    std::cerr << "invalid setting: " << e.what() << '\n';
    return vbody::cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return vbody::cli::kFailure;
  }
}
