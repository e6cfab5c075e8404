#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vtlab/models.hpp"

namespace vtlab {

struct Check {
  std::string id;
  std::string anchor;  // identity label, or "plumbing"
  double err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string details;
};

struct VerifyOptions {
  int points = 20;
  std::uint64_t seed = 1234;
  double tol_scale = 1.0;
};

/// Seeded sample points respecting the chart margin.
std::vector<Vec> sample_points(const ChartMetric& m, int count, std::uint64_t seed);

/// d Omega = -k Gamma ^ Omega, delta Omega = (n-k) Gamma -| Omega,
/// nabla_Gamma Omega = 0, dGamma ^ Omega = 0, nabla^g Omega pointwise law,
/// and nabla^g_X Psi = 1/2 (X ^ Gamma) . Psi when the model has a spinor.
std::vector<Check> verify_form_calculus(const ChartModel& model, const VerifyOptions& opt);

/// Metricity of the levi_civita / vectorial / skew connections, the Weyl
/// conformal weight, torsion types, and the curvature comparison
/// R^vec = R^w - dGamma id, Ric^vec = Ric^w + dGamma.
std::vector<Check> verify_connections(const ChartModel& model, const VerifyOptions& opt);

/// Ricci / scalar curvature of a structure with invariant spinor:
/// Ric = (n-2) nabla Gamma - delta(Gamma) id + A(., Gamma)  (n >= 5, the
/// symmetrized version in n = 4), Scal = 2(1-n) delta(Gamma) +
/// (n-1)(n-2) |Gamma|^2, and the corollary for g(Ric Gamma, Gamma).
std::vector<Check> verify_fixspinor_ricci(const ChartModel& model, const VerifyOptions& opt);

/// The five Clifford identities linking Gamma, T^c and Psi, and the
/// dimension-7 specializations.
std::vector<Check> verify_section3_identities(const ChartModel& model, const VerifyOptions& opt);

/// Generalized Hopf checks: nabla^c Gamma = 0 and its consequences; model
/// specific closed forms (unit Lee form, 2 Gamma = * J(d Omega), T^c =
/// 2 (J Gamma ^ Omega), Killing fields).
std::vector<Check> verify_hopf(const ChartModel& model, const VerifyOptions& opt);

/// Umbilic foliation identities of the warped model.
std::vector<Check> verify_foliation(const ChartModel& model, const VerifyOptions& opt);

/// nabla^vec Gamma = 0  =>  delta(Gamma) = (n-1) |Gamma|^2, reported with the
/// premise residual (vacuously true where the premise fails).
std::vector<Check> verify_vec_rigidity(const ChartModel& model, const VerifyOptions& opt);

}  // namespace vtlab
