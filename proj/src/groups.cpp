#include "vtlab/groups.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace vtlab {

std::string group_name(GroupId id) {
  switch (id) {
    case GroupId::U_n: return "U_n";
    case GroupId::G2: return "G2";
    case GroupId::SPIN7: return "SPIN7";
    case GroupId::SO3_IRRED5: return "SO3_IRRED5";
    case GroupId::SPIN9: return "SPIN9";
    case GroupId::SO_nm1: return "SO_nm1";
    case GroupId::SU2_4: return "SU2_4";
    case GroupId::SO_FULL: return "SO_FULL";
    case GroupId::CUSTOM: return "custom";
  }
  return "unknown";
}

std::optional<GroupId> parse_group(const std::string& name) {
  for (GroupId id : {GroupId::U_n, GroupId::G2, GroupId::SPIN7, GroupId::SO3_IRRED5,
                     GroupId::SPIN9, GroupId::SO_nm1, GroupId::SU2_4, GroupId::SO_FULL,
                     GroupId::CUSTOM})
    if (group_name(id) == name) return id;
  return std::nullopt;
}

std::vector<std::string> catalog_group_names() {
  return {"U_n", "G2", "SPIN7", "SO3_IRRED5", "SPIN9", "SO_nm1", "SU2_4", "SO_FULL"};
}

namespace {

FormQ q_monomial(int n, std::vector<int> idx) { return FormQ::monomial(n, idx, Rational(1)); }

std::vector<Form> float_forms(const std::vector<FormQ>& v) {
  std::vector<Form> out;
  out.reserve(v.size());
  for (const auto& f : v) out.push_back(to_float(f));
  return out;
}

QMat coords_rows(const std::vector<FormQ>& span, int n) {
  const std::vector<Mask> basis = mask::monomials(n, 2);
  QMat rows(static_cast<int>(span.size()), static_cast<int>(basis.size()));
  for (size_t i = 0; i < span.size(); ++i) {
    const std::vector<Rational> c = qform_coords(span[i], basis);
    for (size_t j = 0; j < c.size(); ++j) rows(static_cast<int>(i), static_cast<int>(j)) = c[j];
  }
  return rows;
}

std::vector<FormQ> exact_complement(const std::vector<FormQ>& span, int n) {
  const std::vector<Mask> basis = mask::monomials(n, 2);
  const QMat kernel = coords_rows(span, n).nullspace();
  std::vector<FormQ> out;
  for (int c = 0; c < kernel.cols(); ++c) {
    FormQ f(n, 2);
    for (size_t r = 0; r < basis.size(); ++r) f.add_term(basis[r], kernel(static_cast<int>(r), c));
    out.push_back(std::move(f));
  }
  return out;
}

QMat exact_projector(const std::vector<FormQ>& span, int n) {
  const int d = static_cast<int>(mask::monomials(n, 2).size());
  if (span.empty()) return QMat(d, d);
  const QMat bt = coords_rows(span, n);  // r x d
  const QMat b = bt.transpose();         // d x r
  const QMat gram = bt * b;
  return b * gram.inverse() * bt;
}

void attach_exact(SubalgebraBasis& out) {
  out.rational = true;
  out.m_span = exact_complement(out.g_span, out.n);
  out.proj_g = exact_projector(out.g_span, out.n);
  out.proj_m = QMat::identity(out.proj_g.rows()) - out.proj_g;
  out.g_basis = orthonormalize(float_forms(out.g_span));
  out.m_basis = orthonormalize(float_forms(out.m_span));
}

SubalgebraBasis make_so_full(int n) {
  SubalgebraBasis out;
  out.id = GroupId::SO_FULL;
  out.n = n;
  for (Mask m : mask::monomials(n, 2)) {
    FormQ f(n, 2);
    f.add_term(m, Rational(1));
    out.g_span.push_back(std::move(f));
  }
  attach_exact(out);
  return out;
}

SubalgebraBasis make_so_nm1(int n) {
  SubalgebraBasis out;
  out.id = GroupId::SO_nm1;
  out.n = n;
  // stabilizer of e_1; m is spanned by the e_1 ^ e_j slots
  for (int i = 2; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.g_span.push_back(q_monomial(n, {i, j}));
  attach_exact(out);
  return out;
}

SubalgebraBasis make_u_n(int n) {
  SubalgebraBasis out;
  out.id = GroupId::U_n;
  out.n = n;
  const int half = n / 2;
  for (int k = 1; k <= half; ++k) out.g_span.push_back(q_monomial(n, {2 * k - 1, 2 * k}));
  for (int p = 1; p <= half; ++p)
    for (int q = p + 1; q <= half; ++q) {
      out.g_span.push_back(q_monomial(n, {2 * p - 1, 2 * q - 1}) + q_monomial(n, {2 * p, 2 * q}));
      out.g_span.push_back(q_monomial(n, {2 * p - 1, 2 * q}) - q_monomial(n, {2 * p, 2 * q - 1}));
    }
  attach_exact(out);
  return out;
}

SubalgebraBasis make_su2_4() {
  SubalgebraBasis out;
  out.id = GroupId::SU2_4;
  out.n = 4;
  out.g_span = su2_asd_basis();
  attach_exact(out);
  return out;
}

/// Exact annihilator {w in so(n) : rho(w) Omega = 0} of a fixed form.
std::vector<FormQ> exact_annihilator(const FormQ& omega) {
  const int n = omega.n();
  const std::vector<Mask> basis2 = mask::monomials(n, 2);
  const std::vector<Mask> basisk = mask::monomials(n, omega.degree());
  QMat op(static_cast<int>(basisk.size()), static_cast<int>(basis2.size()));
  for (size_t j = 0; j < basis2.size(); ++j) {
    FormQ mono(n, 2);
    mono.add_term(basis2[j], Rational(1));
    const std::vector<Rational> col = qform_coords(rho_star(mono, omega), basisk);
    for (size_t i = 0; i < col.size(); ++i) op(static_cast<int>(i), static_cast<int>(j)) = col[i];
  }
  const QMat kernel = op.nullspace();
  std::vector<FormQ> out;
  for (int c = 0; c < kernel.cols(); ++c) {
    FormQ f(n, 2);
    for (size_t r = 0; r < basis2.size(); ++r) f.add_term(basis2[r], kernel(static_cast<int>(r), c));
    out.push_back(std::move(f));
  }
  return out;
}

SubalgebraBasis make_g2() {
  SubalgebraBasis out;
  out.id = GroupId::G2;
  out.n = 7;
  out.g_span = exact_annihilator(g2_three_form());
  if (out.g_span.size() != 14) throw std::runtime_error("g2 annihilator has unexpected dimension");
  attach_exact(out);
  return out;
}

SubalgebraBasis make_spin7() {
  SubalgebraBasis out;
  out.id = GroupId::SPIN7;
  out.n = 8;
  out.g_span = exact_annihilator(cayley_four_form());
  if (out.g_span.size() != 21) throw std::runtime_error("spin7 annihilator has unexpected dimension");
  attach_exact(out);
  return out;
}

SubalgebraBasis make_so3_irred5() {
  SubalgebraBasis out;
  out.id = GroupId::SO3_IRRED5;
  out.n = 5;
  // so(3) acting on traceless symmetric 3x3 matrices; orthonormal basis of
  // the 5-dimensional module (Frobenius inner product)
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  std::vector<Eigen::Matrix3d> s(5, Eigen::Matrix3d::Zero());
  s[0](0, 1) = s[0](1, 0) = s2;
  s[1](0, 2) = s[1](2, 0) = s2;
  s[2](1, 2) = s[2](2, 1) = s2;
  s[3](0, 0) = s2;
  s[3](1, 1) = -s2;
  s[4](0, 0) = s6;
  s[4](1, 1) = s6;
  s[4](2, 2) = -2.0 * s6;
  std::vector<Eigen::Matrix3d> l(3, Eigen::Matrix3d::Zero());
  l[0](2, 1) = 1.0;
  l[0](1, 2) = -1.0;
  l[1](0, 2) = 1.0;
  l[1](2, 0) = -1.0;
  l[2](1, 0) = 1.0;
  l[2](0, 1) = -1.0;
  std::vector<Form> gen;
  for (const auto& li : l) {
    Eigen::MatrixXd rep(5, 5);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) rep(a, b) = (s[a] * (li * s[b] - s[b] * li)).trace();
    gen.push_back(matrix_to_two_form(rep));
  }
  out.g_basis = orthonormalize(gen);
  if (out.g_basis.size() != 3) throw std::runtime_error("so3 irreducible basis degenerate");
  // float complement
  const std::vector<Mask> basis2 = mask::monomials(5, 2);
  const Eigen::MatrixXd rows = forms_matrix(out.g_basis, basis2).transpose();
  const Eigen::MatrixXd kernel = nullspace_svd(rows, 1e-12);
  std::vector<Form> mb;
  for (int c = 0; c < kernel.cols(); ++c) mb.push_back(form_from_coords(5, 2, basis2, kernel.col(c)));
  out.m_basis = orthonormalize(mb);
  return out;
}

SubalgebraBasis make_spin9() {
  SubalgebraBasis out;
  out.id = GroupId::SPIN9;
  out.n = 16;
  const std::vector<QMat> gamma = cl9_generators();
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) {
      QMat half = gamma[i] * gamma[j];
      for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) half(r, c) /= 2;
      out.g_span.push_back(qmat_to_two_form(half));
    }
  attach_exact(out);
  return out;
}

}  // namespace

SubalgebraBasis subalgebra(GroupId id, int n) {
  auto check = [&](bool ok) {
    if (!ok) throw std::invalid_argument("subalgebra: incompatible (group, n) pair");
  };
  switch (id) {
    case GroupId::U_n:
      check(n >= 2 && n % 2 == 0);
      return make_u_n(n);
    case GroupId::G2:
      check(n == 7);
      return make_g2();
    case GroupId::SPIN7:
      check(n == 8);
      return make_spin7();
    case GroupId::SO3_IRRED5:
      check(n == 5);
      return make_so3_irred5();
    case GroupId::SPIN9:
      check(n == 16);
      return make_spin9();
    case GroupId::SO_nm1:
      check(n >= 3);
      return make_so_nm1(n);
    case GroupId::SU2_4:
      check(n == 4);
      return make_su2_4();
    case GroupId::SO_FULL:
      check(n >= 2);
      return make_so_full(n);
    case GroupId::CUSTOM:
      throw std::invalid_argument("subalgebra: custom requires an explicit spanning set");
  }
  throw std::invalid_argument("subalgebra: unknown group");
}

SubalgebraBasis custom_subalgebra(int n, const std::vector<Form>& g_span) {
  SubalgebraBasis out;
  out.id = GroupId::CUSTOM;
  out.n = n;
  out.g_basis = orthonormalize(g_span);
  const std::vector<Mask> basis2 = mask::monomials(n, 2);
  if (out.g_basis.empty()) {
    // trivial group: m is everything
    for (Mask m : basis2) {
      Form f(n, 2);
      f.add_term(m, 1.0);
      out.m_basis.push_back(std::move(f));
    }
    return out;
  }
  const Eigen::MatrixXd rows = forms_matrix(out.g_basis, basis2).transpose();
  const Eigen::MatrixXd kernel = nullspace_svd(rows, 1e-12);
  std::vector<Form> mb;
  for (int c = 0; c < kernel.cols(); ++c) mb.push_back(form_from_coords(n, 2, basis2, kernel.col(c)));
  out.m_basis = orthonormalize(mb);
  return out;
}

Form project_g(const Form& w, const SubalgebraBasis& b) {
  if (w.degree() != 2 || w.n() != b.n) throw std::invalid_argument("project_g: shape mismatch");
  Form out(b.n, 2);
  for (const Form& u : b.g_basis) out += inner(w, u) * u;
  return out;
}

Form project_m(const Form& w, const SubalgebraBasis& b) {
  if (w.degree() != 2 || w.n() != b.n) throw std::invalid_argument("project_m: shape mismatch");
  Form out(b.n, 2);
  for (const Form& u : b.m_basis) out += inner(w, u) * u;
  return out;
}

FormQ project_g_exact(const FormQ& w, const SubalgebraBasis& b) {
  if (!b.rational) throw std::invalid_argument("project_g_exact: group has no rational structure");
  const std::vector<Mask> basis2 = mask::monomials(b.n, 2);
  const std::vector<Rational> c = qform_coords(w, basis2);
  FormQ out(b.n, 2);
  for (size_t i = 0; i < basis2.size(); ++i) {
    Rational acc(0);
    for (size_t j = 0; j < basis2.size(); ++j) {
      const Rational& p = b.proj_g(static_cast<int>(i), static_cast<int>(j));
      if (!p.is_zero() && !c[j].is_zero()) acc += p * c[j];
    }
    out.add_term(basis2[i], acc);
  }
  return out;
}

FormQ project_m_exact(const FormQ& w, const SubalgebraBasis& b) {
  return w - project_g_exact(w, b);
}

double bracket_closure_residual(const SubalgebraBasis& b) {
  double worst = 0.0;
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(b.g_basis.size());
  for (const Form& g : b.g_basis) mats.push_back(two_form_to_matrix(g));
  for (size_t i = 0; i < mats.size(); ++i)
    for (size_t j = i + 1; j < mats.size(); ++j) {
      const Form br = matrix_to_two_form(mats[i] * mats[j] - mats[j] * mats[i]);
      const Form residual = br - project_g(br, b);
      worst = std::max(worst, std::sqrt(norm2(residual)));
    }
  return worst;
}

namespace {

std::vector<CasimirBlock> cluster_eigenvalues(const Eigen::VectorXd& ev) {
  std::vector<CasimirBlock> blocks;
  if (ev.size() == 0) return blocks;
  const double scale = std::max(1.0, std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))));
  const double tol = 1e-6 * scale;
  for (int i = 0; i < ev.size(); ++i) {
    if (!blocks.empty() && std::abs(ev(i) - blocks.back().eigenvalue) < tol) {
      ++blocks.back().multiplicity;
    } else {
      blocks.push_back({ev(i), 1});
    }
  }
  return blocks;
}

}  // namespace

std::vector<CasimirBlock> casimir_split_forms(const SubalgebraBasis& b, int k) {
  const std::vector<Mask> basis = mask::monomials(b.n, k);
  const int dim = static_cast<int>(basis.size());
  if (dim > kCasimirSpaceGuard) throw std::invalid_argument("casimir_split_forms: space dimension exceeds cost guard");
  if (dim == 0) return {};
  Eigen::MatrixXd cas = Eigen::MatrixXd::Zero(dim, dim);
  for (const Form& g : b.g_basis) {
    const Eigen::MatrixXd op = rho_star_operator(g, k);
    cas += op * op;
  }
  cas = 0.5 * (cas + cas.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cas);
  return cluster_eigenvalues(es.eigenvalues());
}

std::vector<CasimirBlock> casimir_split_rn_m(const SubalgebraBasis& b) {
  const int dm = b.dim_m();
  const int dim = b.n * dm;
  if (dim > kCasimirSpaceGuard) throw std::invalid_argument("casimir_split_rn_m: space dimension exceeds cost guard");
  if (dim == 0) return {};
  Eigen::MatrixXd cas = Eigen::MatrixXd::Zero(dim, dim);
  for (const Form& g : b.g_basis) {
    const Eigen::MatrixXd rv = two_form_to_matrix(g);
    Eigen::MatrixXd rm(dm, dm);
    for (int j = 0; j < dm; ++j) {
      const Form img = rho_star(g, b.m_basis[j]);
      for (int i = 0; i < dm; ++i) rm(i, j) = inner(b.m_basis[i], img);
    }
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j)
        if (rv(i, j) != 0.0) op.block(i * dm, j * dm, dm, dm) += rv(i, j) * Eigen::MatrixXd::Identity(dm, dm);
    for (int i = 0; i < b.n; ++i) op.block(i * dm, i * dm, dm, dm) += rm;
    cas += op * op;
  }
  cas = 0.5 * (cas + cas.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cas);
  return cluster_eigenvalues(es.eigenvalues());
}

InvariantForms invariant_forms(const SubalgebraBasis& b, int k, bool allow_expensive) {
  InvariantForms out;
  out.k = k;
  if (k < 0 || k > b.n) throw std::invalid_argument("invariant_forms: degree out of range");
  if (b.id == GroupId::SPIN9 && k > 4 && !allow_expensive) {
    out.status = InvariantForms::Status::not_computed;
    out.note = "cost guard: spin(9) invariant forms restricted to k <= 4 (8-form via stretch job)";
    return out;
  }
  const std::vector<Mask> basis = mask::monomials(b.n, k);
  const int dim = static_cast<int>(basis.size());
  if (k == 0) {
    out.basis.push_back(Form::scalar(b.n, 1.0));
    out.exact = true;
    return out;
  }
  if (b.g_basis.empty()) {
    for (Mask m : basis) {
      Form f(b.n, k);
      f.add_term(m, 1.0);
      out.basis.push_back(std::move(f));
    }
    out.exact = true;
    return out;
  }
  if (b.rational && dim <= 256) {
    // iterated exact kernel over the rational spanning set
    QMat kernel = QMat::identity(dim);
    for (const FormQ& g : b.g_span) {
      if (kernel.cols() == 0) break;
      const QMat op = rho_star_operator_exact(g, k);
      kernel = kernel * (op * kernel).nullspace();
    }
    for (int c = 0; c < kernel.cols(); ++c) {
      Form f(b.n, k);
      for (int r = 0; r < dim; ++r) f.add_term(basis[r], to_double(kernel(r, c)));
      out.basis.push_back(std::move(f));
    }
    out.basis = orthonormalize(out.basis);
    out.exact = true;
    return out;
  }
  if (dim <= 400) {
    Eigen::MatrixXd kernel = Eigen::MatrixXd::Identity(dim, dim);
    for (const Form& g : b.g_basis) {
      if (kernel.cols() == 0) break;
      const Eigen::MatrixXd restricted = rho_star_operator(g, k) * kernel;
      kernel = (kernel * nullspace_svd(restricted, 1e-9)).eval();
    }
    for (int c = 0; c < kernel.cols(); ++c)
      out.basis.push_back(form_from_coords(b.n, k, basis, kernel.col(c)));
    out.basis = orthonormalize(out.basis);
    return out;
  }
  // large spaces: kernel of the positive semidefinite stack sum_a A_a^T A_a
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, dim);
  for (const Form& g : b.g_basis) {
    const Eigen::MatrixXd op = rho_star_operator(g, k);
    acc += op.transpose() * op;
  }
  acc = 0.5 * (acc + acc.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(acc);
  const double cutoff = 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff());
  for (int i = 0; i < dim; ++i)
    if (es.eigenvalues()(i) < cutoff)
      out.basis.push_back(form_from_coords(b.n, k, basis, es.eigenvectors().col(i)));
  out.basis = orthonormalize(out.basis);
  return out;
}

WedgeInjectivity wedge_multiplication_injective(const Form& omega) {
  if (omega.degree() + 2 > omega.n())
    throw std::invalid_argument("wedge_multiplication_injective: degree overflow");
  WedgeInjectivity out;
  const Eigen::MatrixXd op = wedge_operator(omega, 2);
  out.rank = rank_svd(op, 1e-9);
  out.kernel_dim = static_cast<int>(op.cols()) - out.rank;
  out.injective = (out.kernel_dim == 0);
  return out;
}

WedgeInjectivity wedge_multiplication_injective_exact(const FormQ& omega) {
  if (omega.degree() + 2 > omega.n())
    throw std::invalid_argument("wedge_multiplication_injective: degree overflow");
  WedgeInjectivity out;
  const QMat op = wedge_operator_exact(omega, 2);
  out.rank = op.rank();
  out.kernel_dim = op.cols() - out.rank;
  out.injective = (out.kernel_dim == 0);
  out.exact = true;
  return out;
}

FormQ g2_three_form() {
  FormQ phi(7, 3);
  auto add = [&](int a, int b, int c, int s) { phi += q_monomial(7, {a, b, c}) * Rational(s); };
  add(1, 2, 3, 1);
  add(1, 4, 5, 1);
  add(1, 6, 7, 1);
  add(2, 4, 6, 1);
  add(2, 5, 7, -1);
  add(3, 4, 7, -1);
  add(3, 5, 6, -1);
  return phi;
}

FormQ cayley_four_form() {
  const FormQ phi = g2_three_form();
  const FormQ e8 = q_monomial(8, {8});
  return wedge(e8, embed(phi, 8)) + embed(hodge(phi), 8);
}

FormQ kaehler_form(int half_n) {
  FormQ omega(2 * half_n, 2);
  for (int k = 1; k <= half_n; ++k) omega += q_monomial(2 * half_n, {2 * k - 1, 2 * k});
  return omega;
}

std::vector<FormQ> su2_asd_basis() {
  return {q_monomial(4, {1, 2}) - q_monomial(4, {3, 4}),
          q_monomial(4, {1, 3}) + q_monomial(4, {2, 4}),
          q_monomial(4, {1, 4}) - q_monomial(4, {2, 3})};
}

std::vector<QMat> cl9_generators() {
  // octonion imaginary units follow the cyclic triples (i, i+1, i+3) mod 7
  int prod[8][8] = {};  // signed imaginary index, 0 entries filled below
  int sign[8][8] = {};
  auto set = [&](int a, int b, int c, int s) {
    prod[a][b] = c;
    sign[a][b] = s;
  };
  const int triples[7][3] = {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7},
                             {5, 6, 1}, {6, 7, 2}, {7, 1, 3}};
  for (const auto& t : triples) {
    set(t[0], t[1], t[2], 1);
    set(t[1], t[2], t[0], 1);
    set(t[2], t[0], t[1], 1);
    set(t[1], t[0], t[2], -1);
    set(t[2], t[1], t[0], -1);
    set(t[0], t[2], t[1], -1);
  }
  // left multiplication by the basis octonions on R^8 (u_0 = 1)
  std::vector<QMat> lmul(8, QMat(8, 8));
  lmul[0] = QMat::identity(8);
  for (int d = 1; d <= 7; ++d) {
    lmul[d](d, 0) = 1;
    lmul[d](0, d) = -1;
    for (int c = 1; c <= 7; ++c) {
      if (c == d) continue;
      lmul[d](prod[d][c], c) = sign[d][c];
    }
  }
  std::vector<QMat> gamma(9, QMat(16, 16));
  for (int d = 0; d < 8; ++d) {
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        gamma[d](r, c + 8) = lmul[d](r, c);
        gamma[d](r + 8, c) = lmul[d](c, r);
      }
  }
  for (int r = 0; r < 8; ++r) {
    gamma[8](r, r) = 1;
    gamma[8](r + 8, r + 8) = -1;
  }
  // the construction is exact; verify the Clifford relations once
  for (int i = 0; i < 9; ++i)
    for (int j = i; j < 9; ++j) {
      const QMat anti = gamma[i] * gamma[j] + gamma[j] * gamma[i];
      QMat expect(16, 16);
      if (i == j)
        for (int r = 0; r < 16; ++r) expect(r, r) = 2;
      if (!(anti - expect).is_zero()) throw std::runtime_error("cl9 generators violate Clifford relations");
    }
  return gamma;
}

namespace {

Eigen::VectorXd sparse_casimir_apply(const std::vector<Eigen::SparseMatrix<double>>& ops,
                                     const Eigen::VectorXd& x) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(x.size());
  for (const auto& a : ops) acc += a.transpose() * (a * x).eval();
  return acc;
}

}  // namespace

Spin9EightForm spin9_eight_form_stretch(const SubalgebraBasis& spin9) {
  if (spin9.id != GroupId::SPIN9) throw std::invalid_argument("spin9_eight_form_stretch: wrong group");
  Spin9EightForm out;
  const int n = 16, k = 8;
  const std::vector<Mask> basis = mask::monomials(n, k);
  const int dim = static_cast<int>(basis.size());
  std::unordered_map<Mask, int> pos;
  pos.reserve(basis.size());
  for (int i = 0; i < dim; ++i) pos[basis[i]] = i;

  std::vector<Eigen::SparseMatrix<double>> ops;
  for (const Form& g : spin9.g_basis) {
    std::vector<Eigen::Triplet<double>> trip;
    for (int c = 0; c < dim; ++c) {
      Form mono(n, k);
      mono.add_term(basis[c], 1.0);
      const Form img = rho_star(g, mono);
      for (const auto& [m, v] : img.terms()) trip.emplace_back(pos.at(m), c, v);
    }
    Eigen::SparseMatrix<double> a(dim, dim);
    a.setFromTriplets(trip.begin(), trip.end());
    ops.push_back(std::move(a));
  }

  // power iteration for an upper spectral bound of the PSD stack operator
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < dim; ++i) v(i) = unif(rng);
  v.normalize();
  double lambda_max = 0.0;
  for (int it = 0; it < 40; ++it) {
    v = sparse_casimir_apply(ops, v);
    lambda_max = v.norm();
    if (lambda_max == 0.0) break;
    v /= lambda_max;
  }
  const double shift = 1.25 * std::max(lambda_max, 1.0);

  // Lanczos on shift*I - M, full reorthogonalization; the largest Ritz pair
  // of the shifted operator is the smallest eigenpair of M
  const int max_iter = std::min(dim, 320);
  std::vector<Eigen::VectorXd> q;
  Eigen::VectorXd alpha(max_iter), beta(max_iter);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) w(i) = unif(rng);
  w.normalize();
  q.push_back(w);
  int steps = 0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd z = shift * q[it] - sparse_casimir_apply(ops, q[it]);
    for (const auto& qi : q) z -= qi.dot(z) * qi;
    for (const auto& qi : q) z -= qi.dot(z) * qi;
    alpha(it) = q[it].dot(shift * q[it] - sparse_casimir_apply(ops, q[it]));
    const double nb = z.norm();
    steps = it + 1;
    if (nb < 1e-12) break;
    beta(it) = nb;
    if (it + 1 < max_iter) q.push_back(z / nb);
  }
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
  for (int i = 0; i < steps; ++i) {
    tri(i, i) = alpha(i);
    if (i + 1 < steps) tri(i, i + 1) = tri(i + 1, i) = beta(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
  Eigen::VectorXd ritz = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < steps; ++i) ritz += es.eigenvectors()(i, steps - 1) * q[i];
  ritz.normalize();
  out.residual = sparse_casimir_apply(ops, ritz).norm();
  out.found = out.residual < 1e-6 * std::max(1.0, lambda_max);
  if (out.found) {
    out.omega8 = form_from_coords(n, k, basis, ritz);
    out.wedge_check = wedge_multiplication_injective(out.omega8);
  }
  return out;
}

}  // namespace vtlab
