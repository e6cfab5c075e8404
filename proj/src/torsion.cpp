#include "vtlab/torsion.hpp"

#include <cmath>
#include <stdexcept>

namespace vtlab {

double IntrinsicTorsionElement::norm() const {
  double acc = 0.0;
  for (const Form& c : components) acc += norm2(c);
  return std::sqrt(acc);
}

bool IntrinsicTorsionElement::in_m(const SubalgebraBasis& b, double tol) const {
  for (const Form& c : components) {
    const Form residual = c - project_m(c, b);
    if (std::sqrt(norm2(residual)) > tol) return false;
  }
  return true;
}

IntrinsicTorsionElement theta(const Form& t3, const SubalgebraBasis& b) {
  if (t3.degree() != 3 || t3.n() != b.n) throw std::invalid_argument("theta: degree-3 form on matching R^n required");
  IntrinsicTorsionElement out;
  out.n = b.n;
  for (int i = 1; i <= b.n; ++i) out.components.push_back(project_m(interior_basis(i, t3), b));
  return out;
}

IntrinsicTorsionElement theta1(const Form& gamma, const SubalgebraBasis& b) {
  if (gamma.degree() != 1 || gamma.n() != b.n)
    throw std::invalid_argument("theta1: degree-1 form on matching R^n required");
  IntrinsicTorsionElement out;
  out.n = b.n;
  for (int i = 1; i <= b.n; ++i) {
    const Form ei = Form::monomial(b.n, {i});
    out.components.push_back(project_m(wedge(ei, gamma), b));
  }
  return out;
}

Eigen::MatrixXd theta_matrix(const SubalgebraBasis& b) {
  const int n = b.n;
  const int dm = b.dim_m();
  const std::vector<Mask> basis3 = mask::monomials(n, 3);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n * dm, static_cast<int>(basis3.size()));
  for (size_t c = 0; c < basis3.size(); ++c) {
    Form mono(n, 3);
    mono.add_term(basis3[c], 1.0);
    for (int i = 1; i <= n; ++i) {
      const Form slot = interior_basis(i, mono);
      if (slot.is_zero()) continue;
      for (int j = 0; j < dm; ++j)
        out((i - 1) * dm + j, static_cast<int>(c)) = inner(slot, b.m_basis[j]);
    }
  }
  return out;
}

Eigen::MatrixXd theta1_matrix(const SubalgebraBasis& b) {
  const int n = b.n;
  const int dm = b.dim_m();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n * dm, n);
  for (int c = 1; c <= n; ++c) {
    const Form g = Form::monomial(n, {c});
    for (int i = 1; i <= n; ++i) {
      if (i == c) continue;
      const Form slot = wedge(Form::monomial(n, {i}), g);
      for (int j = 0; j < dm; ++j) out((i - 1) * dm + j, c - 1) = inner(slot, b.m_basis[j]);
    }
  }
  return out;
}

std::string image_relation_name(ImageRelation r) {
  switch (r) {
    case ImageRelation::complementary: return "complementary";
    case ImageRelation::contained: return "contained";
    case ImageRelation::partial: return "partial";
  }
  return "unknown";
}

namespace {

/// Exact Theta / Theta_1 columns written in full Lambda^2 coordinates per
/// slot (rank is unchanged by the embedding of m).
QMat theta_matrix_exact(const SubalgebraBasis& b, bool with_theta1) {
  const int n = b.n;
  const std::vector<Mask> basis2 = mask::monomials(n, 2);
  const std::vector<Mask> basis3 = mask::monomials(n, 3);
  const int d2 = static_cast<int>(basis2.size());
  const int cols3 = static_cast<int>(basis3.size());
  const int cols = cols3 + (with_theta1 ? n : 0);
  QMat out(n * d2, cols);
  auto put_slot = [&](const FormQ& w, int slot_i, int col) {
    const FormQ pm = project_m_exact(w, b);
    const std::vector<Rational> c = qform_coords(pm, basis2);
    for (int r = 0; r < d2; ++r)
      if (!c[r].is_zero()) out((slot_i - 1) * d2 + r, col) = c[r];
  };
  for (int c = 0; c < cols3; ++c) {
    FormQ mono(n, 3);
    mono.add_term(basis3[c], Rational(1));
    for (int i = 1; i <= n; ++i) {
      const FormQ slot = interior_basis(i, mono);
      if (slot.is_zero()) continue;
      put_slot(slot, i, c);
    }
  }
  if (with_theta1) {
    for (int g = 1; g <= n; ++g) {
      const FormQ gf = FormQ::monomial(n, {g});
      for (int i = 1; i <= n; ++i) {
        if (i == g) continue;
        put_slot(wedge(FormQ::monomial(n, {i}), gf), i, cols3 + g - 1);
      }
    }
  }
  return out;
}

}  // namespace

ThetaReport analyze_theta(const SubalgebraBasis& b) {
  if (b.n * b.dim_m() > kThetaSpaceGuard)
    throw std::invalid_argument("analyze_theta: n * dim m exceeds cost guard");
  ThetaReport rep;
  rep.group = b.id;
  rep.n = b.n;
  rep.dim_m = b.dim_m();
  const int cols3 = static_cast<int>(mask::monomials(b.n, 3).size());

  if (b.dim_m() == 0) {
    rep.rank_theta = rep.rank_theta1 = rep.rank_stacked = 0;
    rep.theta_injective = false;
    rep.theta1_injective = false;
    rep.image_meets_theta1 = ImageRelation::contained;
    rep.char_connection_for_vectorial = true;
    rep.arithmetic = "trivial (m = 0)";
    return rep;
  }

  if (b.rational && cols3 <= 120) {
    const QMat stacked = theta_matrix_exact(b, true);
    QMat theta_only(stacked.rows(), cols3);
    for (int i = 0; i < stacked.rows(); ++i)
      for (int j = 0; j < cols3; ++j) theta_only(i, j) = stacked(i, j);
    QMat theta1_only(stacked.rows(), b.n);
    for (int i = 0; i < stacked.rows(); ++i)
      for (int j = 0; j < b.n; ++j) theta1_only(i, j) = stacked(i, cols3 + j);
    rep.rank_theta = theta_only.rank();
    rep.rank_theta1 = theta1_only.rank();
    rep.rank_stacked = stacked.rank();
    rep.arithmetic = "exact-rational";
  } else if (b.rational) {
    // spin(9) scale: word-size mod-p elimination; full column rank mod p is
    // an exact certificate over Q
    const QMat stacked = theta_matrix_exact(b, true);
    QMat theta_only(stacked.rows(), cols3);
    for (int i = 0; i < stacked.rows(); ++i)
      for (int j = 0; j < cols3; ++j) theta_only(i, j) = stacked(i, j);
    QMat theta1_only(stacked.rows(), b.n);
    for (int i = 0; i < stacked.rows(); ++i)
      for (int j = 0; j < b.n; ++j) theta1_only(i, j) = stacked(i, cols3 + j);
    rep.rank_theta = rank_mod_p(theta_only);
    rep.rank_theta1 = rank_mod_p(theta1_only);
    rep.rank_stacked = rank_mod_p(stacked);
    const bool certified = rep.rank_theta == cols3 && rep.rank_stacked == cols3 + b.n;
    rep.arithmetic = certified ? "mod-p certified (full column rank)" : "mod-p lower bounds";
  } else {
    const Eigen::MatrixXd mt = theta_matrix(b);
    const Eigen::MatrixXd m1 = theta1_matrix(b);
    Eigen::MatrixXd stacked(mt.rows(), mt.cols() + m1.cols());
    stacked << mt, m1;
    rep.rank_theta = rank_svd(mt);
    rep.rank_theta1 = rank_svd(m1);
    rep.rank_stacked = rank_svd(stacked);
    rep.arithmetic = "float-svd";
  }

  rep.theta_injective = rep.rank_theta == cols3;
  rep.theta1_injective = rep.rank_theta1 == b.n;
  if (rep.rank_stacked == rep.rank_theta && rep.rank_theta1 > 0)
    rep.image_meets_theta1 = ImageRelation::contained;
  else if (rep.rank_stacked == rep.rank_theta + rep.rank_theta1)
    rep.image_meets_theta1 = ImageRelation::complementary;
  else
    rep.image_meets_theta1 = ImageRelation::partial;
  rep.char_connection_for_vectorial = rep.image_meets_theta1 == ImageRelation::contained;
  return rep;
}

CharTorsion characteristic_torsion(const Form& gamma, const SubalgebraBasis& b) {
  if (gamma.degree() != 1 || gamma.n() != b.n)
    throw std::invalid_argument("characteristic_torsion: degree-1 form on matching R^n required");
  CharTorsion out;
  const int n = b.n;
  const int dm = b.dim_m();
  const std::vector<Mask> basis3 = mask::monomials(n, 3);

  const IntrinsicTorsionElement rhs_el = theta1(gamma, b);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n * dm);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < dm; ++j) rhs(i * dm + j) = -2.0 * inner(rhs_el.components[i], b.m_basis[j]);

  const Eigen::MatrixXd mt = theta_matrix(b);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(mt);
  cod.setThreshold(1e-11);
  const Eigen::VectorXd x = cod.solve(rhs);
  const double rhs_norm = rhs.norm();
  const double residual = (mt * x - rhs).norm();
  out.residual_rel = rhs_norm > 0.0 ? residual / rhs_norm : residual;
  out.unique = cod.rank() == static_cast<int>(basis3.size());
  if (rhs_norm == 0.0 || out.residual_rel <= 1e-9) {
    out.status = CharTorsion::Status::solved;
    out.torsion = form_from_coords(n, 3, basis3, x);
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
      const Form cond = 2.0 * wedge(Form::monomial(n, {i}), gamma) + interior_basis(i, out.torsion);
      worst = std::max(worst, std::sqrt(norm2(project_m(cond, b))));
    }
    out.membership_residual = worst;
  } else {
    out.status = CharTorsion::Status::no_solution;
  }
  return out;
}

std::optional<CharTorsionExact> characteristic_torsion_exact(const FormQ& gamma,
                                                             const SubalgebraBasis& b) {
  if (!b.rational) return std::nullopt;
  if (gamma.degree() != 1 || gamma.n() != b.n)
    throw std::invalid_argument("characteristic_torsion_exact: degree-1 form required");
  const int n = b.n;
  const std::vector<Mask> basis2 = mask::monomials(n, 2);
  const std::vector<Mask> basis3 = mask::monomials(n, 3);
  const int d2 = static_cast<int>(basis2.size());

  QMat mt(n * d2, static_cast<int>(basis3.size()));
  for (size_t c = 0; c < basis3.size(); ++c) {
    FormQ mono(n, 3);
    mono.add_term(basis3[c], Rational(1));
    for (int i = 1; i <= n; ++i) {
      const FormQ slot = interior_basis(i, mono);
      if (slot.is_zero()) continue;
      const std::vector<Rational> coords = qform_coords(project_m_exact(slot, b), basis2);
      for (int r = 0; r < d2; ++r)
        if (!coords[r].is_zero()) mt((i - 1) * d2 + r, static_cast<int>(c)) = coords[r];
    }
  }

  QMat rhs(n * d2, 1);
  for (int i = 1; i <= n; ++i) {
    const FormQ slot = project_m_exact(wedge(FormQ::monomial(n, {i}), gamma), b);
    const std::vector<Rational> coords = qform_coords(slot, basis2);
    for (int r = 0; r < d2; ++r) rhs((i - 1) * d2 + r, 0) = Rational(-2) * coords[r];
  }

  CharTorsionExact out;
  QMat sol;
  out.solvable = mt.solve(rhs, &sol);
  if (out.solvable) {
    out.torsion = FormQ(n, 3);
    for (size_t r = 0; r < basis3.size(); ++r) out.torsion.add_term(basis3[r], sol(static_cast<int>(r), 0));
    out.unique = mt.nullspace().cols() == 0;
  }
  return out;
}

Form conformal_shift(const Form& gamma, const Form& df) {
  if (gamma.n() != df.n() || gamma.degree() != 1 || df.degree() != 1)
    throw std::invalid_argument("conformal_shift: two 1-forms on the same R^n required");
  return gamma + df;
}

}  // namespace vtlab
