#include "vtlab/serialize.hpp"

#include <filesystem>
#include <fstream>

namespace vtlab {

Json form_to_json(const Form& a) {
  Json j;
  j["n"] = a.n();
  j["k"] = a.degree();
  j["backend"] = scalar_traits<double>::backend_name();
  Json entries = Json::array();
  for (const auto& [m, v] : a.terms()) {
    Json e;
    e["idx"] = mask::indices(m);
    e["val"] = v;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json form_to_json(const FormQ& a) {
  Json j;
  j["n"] = a.n();
  j["k"] = a.degree();
  j["backend"] = scalar_traits<Rational>::backend_name();
  Json entries = Json::array();
  for (const auto& [m, v] : a.terms()) {
    Json e;
    e["idx"] = mask::indices(m);
    e["num"] = num_string(v);
    e["den"] = den_string(v);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

Form form_from_json(const Json& j) {
  Form a(j.at("n").get<int>(), j.at("k").get<int>());
  for (const auto& e : j.at("entries")) {
    const Mask m = mask::from_indices(e.at("idx").get<std::vector<int>>());
    if (e.contains("val")) {
      a.add_term(m, e.at("val").get<double>());
    } else {
      const Rational q(BigInt(e.at("num").get<std::string>()), BigInt(e.at("den").get<std::string>()));
      a.add_term(m, to_double(q));
    }
  }
  return a;
}

FormQ qform_from_json(const Json& j) {
  if (j.at("backend").get<std::string>() != scalar_traits<Rational>::backend_name())
    throw std::invalid_argument("qform_from_json: float-backend form cannot load exactly");
  FormQ a(j.at("n").get<int>(), j.at("k").get<int>());
  for (const auto& e : j.at("entries")) {
    const Mask m = mask::from_indices(e.at("idx").get<std::vector<int>>());
    a.add_term(m, Rational(BigInt(e.at("num").get<std::string>()), BigInt(e.at("den").get<std::string>())));
  }
  return a;
}

Json spinor_to_json(const Spinor& s) {
  Json j = Json::array();
  for (int i = 0; i < s.size(); ++i) j.push_back(Json::array({s(i).real(), s(i).imag()}));
  return j;
}

Spinor spinor_from_json(const Json& j) {
  Spinor s(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    s(static_cast<int>(i)) = std::complex<double>(j[i][0].get<double>(), j[i][1].get<double>());
  return s;
}

Json theta_report_to_json(const ThetaReport& r) {
  Json j;
  j["group"] = group_name(r.group);
  j["n"] = r.n;
  j["dim_m"] = r.dim_m;
  j["rank_theta"] = r.rank_theta;
  j["rank_theta1"] = r.rank_theta1;
  j["rank_stacked"] = r.rank_stacked;
  j["theta_injective"] = r.theta_injective;
  j["theta1_injective"] = r.theta1_injective;
  j["image_meets_theta1"] = image_relation_name(r.image_meets_theta1);
  j["char_connection_for_vectorial"] = r.char_connection_for_vectorial;
  j["arithmetic"] = r.arithmetic;
  return j;
}

namespace {

ThetaReport theta_report_from_json(const Json& j) {
  ThetaReport r;
  r.group = parse_group(j.at("group").get<std::string>()).value_or(GroupId::CUSTOM);
  r.n = j.at("n").get<int>();
  r.dim_m = j.at("dim_m").get<int>();
  r.rank_theta = j.at("rank_theta").get<int>();
  r.rank_theta1 = j.at("rank_theta1").get<int>();
  r.rank_stacked = j.at("rank_stacked").get<int>();
  r.theta_injective = j.at("theta_injective").get<bool>();
  r.theta1_injective = j.at("theta1_injective").get<bool>();
  const std::string rel = j.at("image_meets_theta1").get<std::string>();
  r.image_meets_theta1 = rel == "complementary" ? ImageRelation::complementary
                         : rel == "contained"   ? ImageRelation::contained
                                                : ImageRelation::partial;
  r.char_connection_for_vectorial = j.at("char_connection_for_vectorial").get<bool>();
  r.arithmetic = j.at("arithmetic").get<std::string>();
  return r;
}

bool group_has_invariant_spinor(GroupId id) {
  return id == GroupId::G2 || id == GroupId::SPIN7 || id == GroupId::SU2_4;
}

}  // namespace

Json gstructure_to_json(const GStructureSpec& spec) {
  Json j;
  j["version"] = kConventionVersion;
  j["group"] = group_name(spec.basis.id);
  j["n"] = spec.basis.n;
  j["dim_g"] = spec.basis.dim_g();
  j["dim_m"] = spec.basis.dim_m();
  Json gb = Json::array(), mb = Json::array();
  for (const Form& f : spec.basis.g_basis) gb.push_back(form_to_json(f));
  for (const Form& f : spec.basis.m_basis) mb.push_back(form_to_json(f));
  j["g_basis"] = std::move(gb);
  j["m_basis"] = std::move(mb);
  Json forms = Json::object();
  for (const auto& [k, basis] : spec.invariant_forms_by_degree) {
    Json arr = Json::array();
    for (const Form& f : basis) arr.push_back(form_to_json(f));
    forms[std::to_string(k)] = std::move(arr);
  }
  j["invariant_forms"] = std::move(forms);
  if (spec.invariant_spinor) j["invariant_spinor"] = spinor_to_json(*spec.invariant_spinor);
  if (spec.theta_report) j["theta_report"] = theta_report_to_json(*spec.theta_report);
  return j;
}

GStructureSpec build_gstructure(GroupId id, int n, const std::vector<int>& form_degrees,
                                bool with_theta) {
  GStructureSpec spec;
  spec.basis = subalgebra(id, n);
  for (int k : form_degrees) {
    const InvariantForms inv = invariant_forms(spec.basis, k);
    if (inv.status == InvariantForms::Status::computed)
      spec.invariant_forms_by_degree[k] = inv.basis;
  }
  if (group_has_invariant_spinor(id)) {
    const CliffordRep rep(n);
    const Eigen::MatrixXcd kernel = invariant_spinors(rep, spec.basis.g_basis);
    if (kernel.cols() > 0) spec.invariant_spinor = kernel.col(0);
  }
  if (with_theta) spec.theta_report = analyze_theta(spec.basis);
  return spec;
}

GStructureSpec load_or_build_gstructure(GroupId id, int n, const std::vector<int>& form_degrees,
                                        const std::string& cache_dir, bool with_theta) {
  if (cache_dir.empty()) return build_gstructure(id, n, form_degrees, with_theta);
  namespace fs = std::filesystem;
  const fs::path path = fs::path(cache_dir) / (group_name(id) + "_" + std::to_string(n) + "_v" +
                                               std::to_string(kConventionVersion) + ".json");
  if (fs::exists(path)) {
    std::ifstream in(path);
    Json j = Json::parse(in);
    if (j.at("version").get<int>() == kConventionVersion &&
        j.at("group").get<std::string>() == group_name(id) && j.at("n").get<int>() == n) {
      bool covers = true;
      for (int k : form_degrees)
        if (!j.at("invariant_forms").contains(std::to_string(k))) covers = false;
      if (covers && (!with_theta || j.contains("theta_report"))) {
        GStructureSpec spec;
        spec.basis = subalgebra(id, n);  // exact structures are rebuilt, not cached
        for (const auto& [key, arr] : j.at("invariant_forms").items()) {
          std::vector<Form> basis;
          for (const auto& fj : arr) basis.push_back(form_from_json(fj));
          spec.invariant_forms_by_degree[std::stoi(key)] = std::move(basis);
        }
        if (j.contains("invariant_spinor"))
          spec.invariant_spinor = spinor_from_json(j.at("invariant_spinor"));
        if (j.contains("theta_report"))
          spec.theta_report = theta_report_from_json(j.at("theta_report"));
        spec.from_cache = true;
        return spec;
      }
    }
  }
  GStructureSpec spec = build_gstructure(id, n, form_degrees, with_theta);
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << gstructure_to_json(spec).dump(2) << "\n";
  return spec;
}

}  // namespace vtlab
