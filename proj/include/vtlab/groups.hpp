#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vtlab/form.hpp"
#include "vtlab/linmap.hpp"
#include "vtlab/qlinalg.hpp"

namespace vtlab {

enum class GroupId { U_n, G2, SPIN7, SO3_IRRED5, SPIN9, SO_nm1, SU2_4, SO_FULL, CUSTOM };

std::string group_name(GroupId id);
std::optional<GroupId> parse_group(const std::string& name);
std::vector<std::string> catalog_group_names();

/// Splitting so(n) = g + m for a fixed subgroup. The orthonormal bases are
/// float; groups with rational generators additionally carry exact spanning
/// sets and exact orthogonal projectors onto g and m (coordinates in the
/// lexicographic basis of Lambda^2).
struct SubalgebraBasis {
  GroupId id = GroupId::CUSTOM;
  int n = 0;
  std::vector<Form> g_basis;  // orthonormal
  std::vector<Form> m_basis;  // orthonormal
  bool rational = false;
  std::vector<FormQ> g_span;
  std::vector<FormQ> m_span;
  QMat proj_g;  // exact, only when rational
  QMat proj_m;

  int dim_g() const { return static_cast<int>(g_basis.size()); }
  int dim_m() const { return static_cast<int>(m_basis.size()); }
};

/// Construct the catalog subalgebra; throws on incompatible (id, n) pairs.
/// Compatible pairs: U_n <-> even n, G2 <-> 7, SPIN7 <-> 8, SO3_IRRED5 <-> 5,
/// SPIN9 <-> 16, SU2_4 <-> 4, SO_nm1 / SO_FULL <-> any n >= 3 resp. >= 2.
SubalgebraBasis subalgebra(GroupId id, int n);

/// Wrap a user-provided spanning set (id = CUSTOM).
SubalgebraBasis custom_subalgebra(int n, const std::vector<Form>& g_span);

Form project_g(const Form& w, const SubalgebraBasis& b);
Form project_m(const Form& w, const SubalgebraBasis& b);
FormQ project_g_exact(const FormQ& w, const SubalgebraBasis& b);
FormQ project_m_exact(const FormQ& w, const SubalgebraBasis& b);

/// Max norm of pr_span(g)([g_i, g_j]) - [g_i, g_j] over all pairs; a closed
/// subalgebra gives ~0.
double bracket_closure_residual(const SubalgebraBasis& b);

struct InvariantForms {
  enum class Status { computed, not_computed };
  Status status = Status::computed;
  int k = 0;
  std::vector<Form> basis;
  bool exact = false;
  std::string note;
};

/// Joint kernel of rho_star(g) on Lambda^k. Exact rational nullspace when the
/// group is rational, float SVD otherwise. Cost guard: SPIN9 is restricted to
/// k <= 4 unless allow_expensive is set.
InvariantForms invariant_forms(const SubalgebraBasis& b, int k, bool allow_expensive = false);

struct CasimirBlock {
  double eigenvalue = 0.0;
  int multiplicity = 0;
};

/// Eigenvalue clusters of the Casimir element sum_a rho(g_a)^2 on Lambda^k.
std::vector<CasimirBlock> casimir_split_forms(const SubalgebraBasis& b, int k);
/// Same on the representation R^n (x) m.
std::vector<CasimirBlock> casimir_split_rn_m(const SubalgebraBasis& b);

inline constexpr int kCasimirSpaceGuard = 2000;

struct WedgeInjectivity {
  bool injective = false;
  int kernel_dim = 0;
  int rank = 0;
  bool exact = false;
};

/// Rank analysis of eta |-> omega ^ eta on Lambda^2.
WedgeInjectivity wedge_multiplication_injective(const Form& omega);
WedgeInjectivity wedge_multiplication_injective_exact(const FormQ& omega);

/// Fixed convention forms of the catalog.
FormQ g2_three_form();                 // on R^7
FormQ cayley_four_form();              // on R^8, e8 ^ phi + *7(phi)
FormQ kaehler_form(int half_n);        // on R^{2 half_n}
std::vector<FormQ> su2_asd_basis();    // anti-self-dual basis on R^4

/// Real 16x16 symmetric anticommuting involutions generating Cl(9); entries
/// are 0, +-1 (octonion construction). Used for the spin(9) subalgebra.
std::vector<QMat> cl9_generators();

/// Attempt the invariant 8-form of spin(9) on Lambda^8(R^16) with a sparse
/// Lanczos kernel solve. Long-running; only wired to the stretch flag.
struct Spin9EightForm {
  bool found = false;
  Form omega8;  // normalized
  double residual = 0.0;
  WedgeInjectivity wedge_check;
};
Spin9EightForm spin9_eight_form_stretch(const SubalgebraBasis& spin9);

}  // namespace vtlab
