#pragma once

#include <json.hpp>

#include <map>
#include <optional>

#include "vtlab/clifford.hpp"
#include "vtlab/form.hpp"
#include "vtlab/torsion.hpp"

namespace vtlab {

using Json = nlohmann::ordered_json;

/// Forms serialize as {n, k, backend, entries: [{idx: [...], val | num, den}]}
/// with entries in the canonical lexicographic order.
Json form_to_json(const Form& a);
Json form_to_json(const FormQ& a);
Form form_from_json(const Json& j);
FormQ qform_from_json(const Json& j);

Json spinor_to_json(const Spinor& s);
Spinor spinor_from_json(const Json& j);

Json theta_report_to_json(const ThetaReport& r);

/// Structure-group record: splitting plus the derived invariant objects.
struct GStructureSpec {
  SubalgebraBasis basis;
  std::map<int, std::vector<Form>> invariant_forms_by_degree;
  std::optional<Spinor> invariant_spinor;
  std::optional<ThetaReport> theta_report;
  bool from_cache = false;
};

inline constexpr int kConventionVersion = 1;

Json gstructure_to_json(const GStructureSpec& spec);

/// Build the full record: subalgebra, invariant forms for the requested
/// degrees, invariant spinor (when the group has one) and the Theta report.
GStructureSpec build_gstructure(GroupId id, int n, const std::vector<int>& form_degrees,
                                bool with_theta = true);

/// Versioned JSON cache keyed by (group, n, convention version). The
/// subalgebra itself is rebuilt (cheap, exact); cached artifacts replace the
/// expensive invariant-form / spinor / Theta computations. An empty cache_dir
/// disables caching.
GStructureSpec load_or_build_gstructure(GroupId id, int n, const std::vector<int>& form_degrees,
                                        const std::string& cache_dir, bool with_theta = true);

}  // namespace vtlab
