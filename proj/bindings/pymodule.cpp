#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vtlab/models.hpp"
#include "vtlab/serialize.hpp"
#include "vtlab/suites.hpp"

namespace py = pybind11;
using namespace vtlab;

namespace {

GroupId group_or_throw(const std::string& name) {
  const auto id = parse_group(name);
  if (!id) throw py::value_error("unknown group '" + name + "'");
  return *id;
}

Form form_from_terms(int n, int k, const std::map<std::vector<int>, double>& terms) {
  Form f(n, k);
  for (const auto& [idx, v] : terms) f.add_term(mask::from_indices(idx), v);
  return f;
}

py::dict terms_of(const Form& f) {
  py::dict out;
  for (const auto& [m, v] : f.terms())
    out[py::tuple(py::cast(mask::indices(m)))] = v;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact and finite-difference checks for G-structures of vectorial type";

  py::class_<Form>(m, "Form")
      .def(py::init(&form_from_terms), py::arg("n"), py::arg("k"), py::arg("terms"))
      .def_property_readonly("n", &Form::n)
      .def_property_readonly("degree", &Form::degree)
      .def("terms", &terms_of)
      .def("wedge", [](const Form& a, const Form& b) { return wedge(a, b); })
      .def("interior", [](const Form& v, const Form& a) { return interior(v, a); })
      .def("hodge", [](const Form& a) { return hodge(a); })
      .def("inner", [](const Form& a, const Form& b) { return inner(a, b); })
      .def("norm2", [](const Form& a) { return norm2(a); })
      .def("__add__", [](const Form& a, const Form& b) { return a + b; })
      .def("__sub__", [](const Form& a, const Form& b) { return a - b; })
      .def("__mul__", [](const Form& a, double s) { return a * s; })
      .def("__rmul__", [](const Form& a, double s) { return a * s; })
      .def("__neg__", [](const Form& a) { return -a; })
      .def("to_json", [](const Form& a) { return form_to_json(a).dump(); })
      .def("__repr__", [](const Form& a) {
        return "Form(n=" + std::to_string(a.n()) + ", k=" + std::to_string(a.degree()) +
               ", terms=" + std::to_string(a.terms().size()) + ")";
      });

  m.def("monomial", [](int n, const std::vector<int>& idx, double coeff) {
    return Form::monomial(n, idx, coeff);
  }, py::arg("n"), py::arg("idx"), py::arg("coeff") = 1.0);

  py::class_<CliffordRep>(m, "Clifford")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("n", &CliffordRep::n)
      .def_property_readonly("dim", &CliffordRep::dim)
      .def("generator", &CliffordRep::generator, py::arg("i"))
      .def("action", &CliffordRep::action, py::arg("form"), py::arg("spinor"))
      .def("action_operator", &CliffordRep::action_operator, py::arg("form"))
      .def("spin_lift", &CliffordRep::spin_lift, py::arg("two_form"));

  m.def("invariant_spinor_count", [](const std::string& group, int n) {
    const SubalgebraBasis b = subalgebra(group_or_throw(group), n);
    const CliffordRep rep(n);
    return static_cast<int>(invariant_spinors(rep, b.g_basis).cols());
  }, py::arg("group"), py::arg("n"));

  m.def("subalgebra_dims", [](const std::string& group, int n) {
    const SubalgebraBasis b = subalgebra(group_or_throw(group), n);
    return std::make_pair(b.dim_g(), b.dim_m());
  }, py::arg("group"), py::arg("n"));

  m.def("invariant_form_count", [](const std::string& group, int n, int k) {
    const InvariantForms inv = invariant_forms(subalgebra(group_or_throw(group), n), k);
    if (inv.status != InvariantForms::Status::computed)
      throw py::value_error("not computed: " + inv.note);
    return static_cast<int>(inv.basis.size());
  }, py::arg("group"), py::arg("n"), py::arg("k"));

  m.def("casimir_split", [](const std::string& group, int n, int k) {
    std::vector<std::pair<double, int>> out;
    for (const auto& b : casimir_split_forms(subalgebra(group_or_throw(group), n), k))
      out.emplace_back(b.eigenvalue, b.multiplicity);
    return out;
  }, py::arg("group"), py::arg("n"), py::arg("k"));

  m.def("theta_report_json", [](const std::string& group, int n) {
    return theta_report_to_json(analyze_theta(subalgebra(group_or_throw(group), n))).dump();
  }, py::arg("group"), py::arg("n"));

  m.def("characteristic_torsion_json", [](const std::string& group, int n,
                                          const std::vector<double>& gamma) {
    if (static_cast<int>(gamma.size()) != n) throw py::value_error("gamma needs n components");
    Form g1(n, 1);
    for (int i = 0; i < n; ++i) g1.add_term(Mask{1} << i, gamma[i]);
    const CharTorsion ct = characteristic_torsion(g1, subalgebra(group_or_throw(group), n));
    Json j;
    j["status"] = ct.status == CharTorsion::Status::solved ? "solved" : "no_solution";
    j["unique"] = ct.unique;
    j["residual_rel"] = ct.residual_rel;
    j["membership_residual"] = ct.membership_residual;
    if (ct.status == CharTorsion::Status::solved) j["torsion"] = form_to_json(ct.torsion);
    return j.dump();
  }, py::arg("group"), py::arg("n"), py::arg("gamma"));

  m.def("run_suite_json", [](const std::string& suite, const std::string& group,
                             const std::string& model, std::uint64_t seed, int grid_points,
                             double fd_step, double tol_scale, bool stretch,
                             const std::string& cache_dir,
                             const std::map<std::string, double>& params) {
    SuiteConfig cfg;
    cfg.suite = suite;
    cfg.group = group;
    cfg.model = model;
    cfg.seed = seed;
    cfg.grid_points = grid_points;
    cfg.fd_step = fd_step;
    cfg.tol_scale = tol_scale;
    cfg.stretch = stretch;
    cfg.cache_dir = cache_dir;
    cfg.params = params;
    try {
      return run_suite(cfg).to_json().dump();
    } catch (const UsageError& e) {
      throw py::value_error(e.what());
    }
  }, py::arg("suite") = "all", py::arg("group") = "", py::arg("model") = "",
     py::arg("seed") = 1234, py::arg("grid_points") = 20, py::arg("fd_step") = 1e-4,
     py::arg("tol_scale") = 1.0, py::arg("stretch") = false, py::arg("cache_dir") = "",
     py::arg("params") = std::map<std::string, double>{});

  m.def("group_catalog", &catalog_group_names);
  m.def("model_catalog", &model_catalog);
  m.def("suite_names", &suite_names);

  m.attr("__version__") = "0.1.0";
}
