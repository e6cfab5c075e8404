#pragma once

#include <map>
#include <string>

#include "vtlab/chart.hpp"
#include "vtlab/groups.hpp"

namespace vtlab {

/// A model manifold: chart metric plus the fields of its G-structure.
/// Conformal-family models follow the frame convention that invariant forms
/// have constant orthonormal-frame components, so in coordinates a degree-k
/// invariant form scales as e^{k f}. The torsion 1-form of those models is
/// Gamma = -df (the sign is forced by d Omega = -k Gamma ^ Omega).
struct ChartModel {
  std::string name;
  int n = 0;
  ChartMetric metric;
  GroupId group = GroupId::CUSTOM;
  FormField lee;                         // Gamma, coordinate components (never null)
  FormField invariant;                   // invariant form field (may be null)
  int invariant_degree = 0;
  SpinorField spinor;                    // frame components (may be null)
  FormField torsion3;                    // characteristic torsion field (may be null)
  std::function<Mat(const Vec&)> jmap;   // complex structure (hermitian models)
  std::map<std::string, double> params;
};

std::vector<std::string> model_catalog();

/// Build a model by name. Unknown names or parameters throw invalid_argument.
/// Names: flat, conformal_g2, conformal_su2, conformal_spin7, hopf_surface,
/// hopf6, foliation, vec_parallel, radial_flat, generic.
ChartModel make_model(const std::string& name, std::map<std::string, double> params,
                      const DerivPolicy& pol);

/// Characteristic torsion of basis torsion 1-forms e_1..e_n (algebraic, frame
/// level); the building block of model torsion fields.
std::vector<Form> torsion_basis_map(const SubalgebraBasis& b);

}  // namespace vtlab
