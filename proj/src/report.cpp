#include "vtlab/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace vtlab {

std::string case_status_name(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::skipped: return "skipped";
    case CaseStatus::not_computed: return "not_computed";
  }
  return "unknown";
}

int VerificationReport::count(CaseStatus s) const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(),
                                        [s](const CaseResult& c) { return c.status == s; }));
}

Json VerificationReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["config"] = config;
  Json arr = Json::array();
  for (const CaseResult& c : cases) {
    Json cj;
    cj["id"] = c.id;
    cj["anchor"] = c.anchor;
    cj["status"] = case_status_name(c.status);
    cj["max_abs_error"] = c.max_abs_error;
    cj["tolerance"] = c.tolerance;
    cj["runtime_ms"] = c.runtime_ms;
    if (!c.details.empty()) cj["details"] = c.details;
    arr.push_back(std::move(cj));
  }
  j["cases"] = std::move(arr);
  Json summary;
  summary["pass"] = count(CaseStatus::pass);
  summary["fail"] = count(CaseStatus::fail);
  summary["skipped"] = count(CaseStatus::skipped);
  summary["not_computed"] = count(CaseStatus::not_computed);
  j["summary"] = std::move(summary);
  return j;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "suite " << suite << " (seed " << seed << ")\n";
  for (const CaseResult& c : cases) {
    out << "  [" << std::setw(12) << case_status_name(c.status) << "] " << c.id;
    if (c.status == CaseStatus::pass || c.status == CaseStatus::fail) {
      out << "  err=" << std::scientific << std::setprecision(3) << c.max_abs_error
          << " tol=" << c.tolerance << std::defaultfloat;
    }
    if (!c.details.empty()) out << "  -- " << c.details;
    out << "\n";
  }
  out << "summary: " << count(CaseStatus::pass) << " pass, " << count(CaseStatus::fail)
      << " fail, " << count(CaseStatus::skipped) << " skipped, " << count(CaseStatus::not_computed)
      << " not computed\n";
  return out.str();
}

Json strip_runtime(Json j) {
  if (j.is_object()) {
    j.erase("runtime_ms");
    for (auto& [k, v] : j.items()) v = strip_runtime(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_runtime(v);
  }
  return j;
}

}  // namespace vtlab
