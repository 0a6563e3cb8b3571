#include "vbody/cli/config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vbody/maps.hpp"

namespace vbody::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where.empty() ? "<root>" : where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      fail(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const std::string field = where.empty() ? key : where + "." + key;
  if (!obj.contains(key)) fail(field, "missing");
  if (!obj.at(key).is_number()) fail(field, "expected a number");
  return obj.at(key).get<double>();
}

double number_or(const json& obj, const std::string& key,
                 const std::string& where, double fallback) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

Vec2 vec2(const json& value, const std::string& field) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
      !value[1].is_number()) {
    fail(field, "expected an array of two numbers");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

std::string text(const json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) fail(key, "expected a string");
  return obj.at(key).get<std::string>();
}

std::string location(const std::string& source, const std::string& text,
                     std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return source + ":" + std::to_string(line) + ":" + std::to_string(column);
}

Scenario from_json(const json& root) {
  reject_unknown(root, "",
                 {"name", "chart", "body", "vortices", "initial", "pose", "t0",
                  "integrator", "dt", "t_end", "stride", "clearance"});
  Scenario s;
  dynamics::SimConfig& c = s.config;
  s.name = text(root, "name", "scenario");

  const std::string chart = text(root, "chart", "");
  if (chart == "smbk") {
    c.chart = Chart::smbk;
  } else if (chart == "bmr") {
    c.chart = Chart::bmr;
  } else {
    fail("chart", chart.empty() ? "missing (smbk or bmr)" : "must be smbk or bmr");
  }

  if (!root.contains("body")) fail("body", "missing");
  const json& body = root.at("body");
  reject_unknown(body, "body", {"radius", "mass", "inertia"});
  c.body.radius = number(body, "radius", "body");
  c.body.mass = number(body, "mass", "body");
  c.body.inertia = number(body, "inertia", "body");
  if (!(c.body.radius > 0.0)) fail("body.radius", "must be positive");
  if (!(c.body.mass > 0.0)) fail("body.mass", "must be positive");
  if (!(c.body.inertia > 0.0)) fail("body.inertia", "must be positive");

  if (root.contains("vortices")) {
    const json& list = root.at("vortices");
    if (!list.is_array()) fail("vortices", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "vortices[" + std::to_string(i) + "]";
      reject_unknown(list[i], where, {"strength", "position"});
      const double gamma = number(list[i], "strength", where);
      if (!list[i].contains("position")) fail(where + ".position", "missing");
      const Vec2 X = vec2(list[i].at("position"), where + ".position");
      if (gamma == 0.0) fail(where + ".strength", "must be nonzero");
      if (!(X.norm() > c.body.radius)) {
        fail(where + ".position", "vortex " + std::to_string(i) +
                                      " lies inside the body (|X| <= radius)");
      }
      c.vortices.strengths.push_back(gamma);
      c.vortices.positions.push_back(X);
    }
  }
  try {
    c.vortices.validate(c.body.fluid());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  ChartState initial{Chart::bmr, Eigen::Vector3d::Zero(), c.vortices.positions};
  if (root.contains("initial")) {
    const json& init = root.at("initial");
    reject_unknown(init, "initial",
                   {"omega", "velocity", "angular_momentum", "momentum"});
    const bool velocities = init.contains("omega") || init.contains("velocity");
    const bool momenta = init.contains("angular_momentum") || init.contains("momentum");
    if (velocities && momenta) {
      fail("initial", "give either omega/velocity or angular_momentum/momentum");
    }
    if (momenta) {
      initial.chart = Chart::smbk;
      initial.body[0] = number_or(init, "angular_momentum", "initial", 0.0);
      if (init.contains("momentum")) {
        initial.body.tail<2>() = vec2(init.at("momentum"), "initial.momentum");
      }
    } else {
      initial.body[0] = number_or(init, "omega", "initial", 0.0);
      if (init.contains("velocity")) {
        initial.body.tail<2>() = vec2(init.at("velocity"), "initial.velocity");
      }
    }
  }
  if (initial.chart != c.chart) {
    initial = c.chart == Chart::smbk
                  ? maps::shift_map(initial, c.body, c.vortices.strengths)
                  : maps::inverse_shift_map(initial, c.body, c.vortices.strengths);
  }
  c.initial_body = initial.body;

  if (root.contains("pose")) {
    const json& pose = root.at("pose");
    reject_unknown(pose, "pose", {"beta", "x0"});
    c.initial_pose.beta = se2::normalize_angle(number_or(pose, "beta", "pose", 0.0));
    if (pose.contains("x0")) c.initial_pose.x0 = vec2(pose.at("x0"), "pose.x0");
  }

  c.t0 = number_or(root, "t0", "", 0.0);
  c.dt = number(root, "dt", "");
  c.t_end = number(root, "t_end", "");
  const std::string integrator = text(root, "integrator", "rk4");
  if (integrator == "rk4") {
    c.integrator = dynamics::Integrator::rk4;
  } else if (integrator == "midpoint") {
    c.integrator = dynamics::Integrator::midpoint;
  } else {
    fail("integrator", "must be rk4 or midpoint");
  }
  if (root.contains("stride")) {
    const json& stride = root.at("stride");
    if (!stride.is_number_integer() || stride.get<long long>() < 1) {
      fail("stride", "expected a positive integer");
    }
    c.stride = stride.get<std::size_t>();
  }
  c.clearance = number_or(root, "clearance", "", 0.0);
  if (!(c.dt > 0.0)) fail("dt", "must be positive");
  if (!(c.t_end >= c.t0)) fail("t_end", "must not precede t0");
  if (c.clearance < 0.0) fail("clearance", "must be positive");
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return s;
}

}  // namespace

Scenario parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(location(source, text, e.byte) + ": invalid JSON: " + e.what());
  }
  try {
    return from_json(root);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

Scenario load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::vector<std::string> preset_names() {
  return {"kirchhoff", "single-vortex-fixed", "two-vortex-free"};
}

Scenario preset(const std::string& name) {
  Scenario s;
  s.name = name;
  dynamics::SimConfig& c = s.config;
  c.body = {std::numbers::pi, 1.0, 1.0};
  c.chart = Chart::bmr;
  if (name == "kirchhoff") {
    c.initial_body = Eigen::Vector3d(0.0, 1.0, 0.5);
    c.dt = 1e-2;
    c.t_end = 10.0;
  } else if (name == "single-vortex-fixed") {
    c.body.mass = 1e6 * std::numbers::pi;
    c.vortices = {{2.0 * std::numbers::pi}, {Vec2(2.0, 0.0)}};
    c.dt = 1e-2;
    c.t_end = 24.0 * std::numbers::pi;
    c.stride = 10;
  } else if (name == "two-vortex-free") {
    c.vortices = {{1.0, -1.0}, {Vec2(2.0, 0.3), Vec2(-0.5, 2.2)}};
    c.initial_body = Eigen::Vector3d(0.0, 0.1, 0.0);
    c.dt = 1e-3;
    c.t_end = 10.0;
    c.stride = 10;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  c.validate();
  return s;
}

}  // namespace vbody::cli
