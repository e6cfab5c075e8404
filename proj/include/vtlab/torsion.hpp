#pragma once

#include <optional>
#include <string>

#include "vtlab/groups.hpp"

namespace vtlab {

/// Element of R^n (x) m: one m-valued 2-form slot per basis vector.
struct IntrinsicTorsionElement {
  int n = 0;
  std::vector<Form> components;

  double norm() const;
  bool in_m(const SubalgebraBasis& b, double tol = 1e-10) const;
};

/// Theta(T) = sum_i e_i (x) pr_m(e_i -| T), embedding 3-forms.
IntrinsicTorsionElement theta(const Form& t3, const SubalgebraBasis& b);
/// Theta_1(G) = sum_i e_i (x) pr_m(e_i ^ G), the copy of R^n.
IntrinsicTorsionElement theta1(const Form& gamma, const SubalgebraBasis& b);

/// Matrices of Theta and Theta_1 in (slot i, m-basis) coordinates.
Eigen::MatrixXd theta_matrix(const SubalgebraBasis& b);
Eigen::MatrixXd theta1_matrix(const SubalgebraBasis& b);

enum class ImageRelation { complementary, contained, partial };
std::string image_relation_name(ImageRelation r);

struct ThetaReport {
  GroupId group = GroupId::CUSTOM;
  int n = 0;
  int dim_m = 0;
  int rank_theta = 0;
  int rank_theta1 = 0;
  int rank_stacked = 0;
  bool theta_injective = false;
  bool theta1_injective = false;
  ImageRelation image_meets_theta1 = ImageRelation::partial;
  bool char_connection_for_vectorial = false;
  std::string arithmetic;  // exact-rational | float-svd | mod-p certified
};

inline constexpr int kThetaSpaceGuard = 2000;  // bound on n * dim m

/// Rank analysis of Theta, Theta_1 and the stacked map. Exact rational ranks
/// where the group is rational and small; for spin(9) a mod-p elimination
/// certifies the ranks (full column rank mod p is exact over Q).
ThetaReport analyze_theta(const SubalgebraBasis& b);

struct CharTorsion {
  enum class Status { solved, no_solution };
  Status status = Status::no_solution;
  Form torsion;                       // valid when solved
  bool unique = false;                // Theta injective
  double residual_rel = 0.0;          // least-squares relative residual
  double membership_residual = 0.0;   // max_X |pr_m(2 (X ^ G) + X -| T)|
};

/// Solve Theta(T) = -2 Theta_1(G) by rank-revealing least squares. The
/// minimum-norm solution is returned when Theta has a kernel; no-solution is
/// reported when the relative residual exceeds 1e-9 (an expected obstruction
/// for the complementary-image groups, not a failure).
CharTorsion characteristic_torsion(const Form& gamma, const SubalgebraBasis& b);

struct CharTorsionExact {
  bool solvable = false;
  FormQ torsion;
  bool unique = false;
};

/// Exact-rational companion of the solver; nullopt when the group carries no
/// rational structure.
std::optional<CharTorsionExact> characteristic_torsion_exact(const FormQ& gamma,
                                                             const SubalgebraBasis& b);

/// Conformal change of the torsion 1-form.
Form conformal_shift(const Form& gamma, const Form& df);

}  // namespace vtlab
