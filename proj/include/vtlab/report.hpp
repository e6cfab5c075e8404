#pragma once

#include <string>
#include <vector>

#include "vtlab/serialize.hpp"

namespace vtlab {

enum class CaseStatus { pass, fail, skipped, not_computed };
std::string case_status_name(CaseStatus s);

struct CaseResult {
  std::string id;
  std::string anchor;  // identity label, or "plumbing"
  CaseStatus status = CaseStatus::fail;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
  std::string details;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  Json config;
  std::vector<CaseResult> cases;

  int count(CaseStatus s) const;
  /// not_computed and skipped never count as passes; failure is the only
  /// state that makes the run fail.
  bool all_passed() const { return count(CaseStatus::fail) == 0; }

  Json to_json() const;
  std::string to_text() const;
};

/// Strip the timing fields, for byte-stable comparisons.
Json strip_runtime(Json j);

}  // namespace vtlab
