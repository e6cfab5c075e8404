#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "vtlab/report.hpp"

namespace vtlab {

/// Thrown for unknown suite / group / model names; maps to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::string suite = "all";  // algebra | groups | torsion | manifold | all
  std::string group;          // optional filter for groups / torsion cases
  std::string model;          // optional filter for manifold cases
  std::map<std::string, double> params;
  double tol_scale = 1.0;
  double fd_step = 1e-4;
  int grid_points = 20;
  std::uint64_t seed = 1234;
  bool stretch = false;
  std::string cache_dir;
};

std::vector<std::string> suite_names();

VerificationReport run_suite(const SuiteConfig& cfg);

}  // namespace vtlab
