#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "vtlab/models.hpp"
#include "vtlab/suites.hpp"

namespace {

std::string catalog_listing() {
  std::string out = "suites:";
  for (const auto& s : vtlab::suite_names()) out += " " + s;
  out += "\ngroups:";
  for (const auto& g : vtlab::catalog_group_names()) out += " " + g;
  out += "\nmodels:";
  for (const auto& m : vtlab::model_catalog()) out += " " + m;
  out += " sphere conformal_ricci conformal_shift";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vtlab: exact and finite-difference checks for G-structures of vectorial type"};
  app.set_config("--config", "", "Configuration file (key=value lines; flags win)");

  vtlab::SuiteConfig cfg;
  std::vector<std::string> params;
  std::string format = "text";
  std::string output;
  cfg.cache_dir = std::getenv("VTLAB_CACHE_DIR") ? std::getenv("VTLAB_CACHE_DIR") : "";

  app.add_option("--suite", cfg.suite, "Suite to run: algebra, groups, torsion, manifold, all")
      ->capture_default_str();
  app.add_option("--group", cfg.group, "Restrict group-indexed cases to one structure group");
  app.add_option("--model", cfg.model, "Restrict manifold cases to one model");
  app.add_option("--params", params, "Model parameters as k=v (repeatable)");
  app.add_option("--tolerance", cfg.tol_scale, "Scale factor applied to every case tolerance")
      ->capture_default_str();
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step h")->capture_default_str();
  app.add_option("--grid-points", cfg.grid_points, "Sample points per chart-level case")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for all randomized inputs")->capture_default_str();
  app.add_option("--format", format, "Report format: json or text")->capture_default_str();
  app.add_option("--output", output, "Write the report to this path instead of stdout");
  app.add_flag("--stretch", cfg.stretch, "Enable the long-running spin(9) 8-form job");
  app.add_option("--cache-dir", cfg.cache_dir,
                 "Cache directory for structure-group artifacts (env VTLAB_CACHE_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (format != "json" && format != "text") {
    std::cerr << "unknown format '" << format << "' (expected json or text)\n";
    return 2;
  }
  for (const std::string& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "bad --params entry '" << kv << "' (expected k=v)\n";
      return 2;
    }
    try {
      cfg.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "bad --params value in '" << kv << "'\n";
      return 2;
    }
  }

  vtlab::VerificationReport report;
  try {
    report = vtlab::run_suite(cfg);
  } catch (const vtlab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << catalog_listing() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string rendered =
      format == "json" ? report.to_json().dump(2) + "\n" : report.to_text();
  if (output.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot open output path " << output << "\n";
      return 2;
    }
    out << rendered;
    std::cout << "report written to " << output << "\n";
  }
  return report.all_passed() ? 0 : 1;
}
