#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbody/dynamics.hpp"

namespace vbody::cli {

// Bad scenario text. The message names the line (syntax errors) or the
// field (schema and invariant errors).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string name;
  dynamics::SimConfig config;
};

Scenario parse_config(const std::string& text,
                      const std::string& source = "<string>");
Scenario load_config(const std::filesystem::path& path);

std::vector<std::string> preset_names();
// Throws ConfigError for an unknown name.
Scenario preset(const std::string& name);

}  // namespace vbody::cli
