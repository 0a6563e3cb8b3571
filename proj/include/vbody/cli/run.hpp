#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "vbody/cli/config.hpp"

namespace vbody::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kCollision = 3,
  kNoConvergence = 4,
};

struct RunOptions {
  // Continue from the last row of an existing trajectory.csv in the output
  // directory, appending to it.
  bool resume = false;
};

struct RunResult {
  int exit_code = kOk;
  std::string summary;
  std::filesystem::path csv;
};

// Writes trajectory.csv and summary.txt into `out_dir`.
RunResult run(const Scenario& scenario, const std::filesystem::path& out_dir,
              const RunOptions& options = {});

std::string csv_header(Chart chart, std::size_t vortices);

// Restores a scenario to the state stored in the last data row of `csv`.
Scenario resume_from(const Scenario& scenario, const std::filesystem::path& csv);

struct VerifyRow {
  std::string check;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Structure, Jacobi, pushforward, cocycle and energy checks on seeded
// random states.
std::vector<VerifyRow> verify(unsigned long seed = 20240611);

}  // namespace vbody::cli
