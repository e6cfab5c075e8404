#include "vtlab/linmap.hpp"

#include <stdexcept>
#include <unordered_map>

namespace vtlab {

Eigen::MatrixXd two_form_to_matrix(const Form& w) {
  if (w.degree() != 2) throw std::invalid_argument("two_form_to_matrix: degree-2 form required");
  const int n = w.n();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [mk, v] : w.terms()) {
    const std::vector<int> ij = mask::indices(mk);
    m(ij[1] - 1, ij[0] - 1) += v;
    m(ij[0] - 1, ij[1] - 1) -= v;
  }
  return m;
}

Form matrix_to_two_form(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Form w(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      w.add_term((Mask{1} << i) | (Mask{1} << j), 0.5 * (m(j, i) - m(i, j)));
  return w;
}

QMat two_form_to_qmat(const FormQ& w) {
  if (w.degree() != 2) throw std::invalid_argument("two_form_to_qmat: degree-2 form required");
  const int n = w.n();
  QMat m(n, n);
  for (const auto& [mk, v] : w.terms()) {
    const std::vector<int> ij = mask::indices(mk);
    m(ij[1] - 1, ij[0] - 1) += v;
    m(ij[0] - 1, ij[1] - 1) -= v;
  }
  return m;
}

FormQ qmat_to_two_form(const QMat& m) {
  const int n = m.rows();
  FormQ w(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      w.add_term((Mask{1} << i) | (Mask{1} << j), (m(j, i) - m(i, j)) / 2);
  return w;
}

Eigen::VectorXd form_coords(const Form& a, const std::vector<Mask>& basis) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<int>(basis.size()));
  std::unordered_map<Mask, int> pos;
  for (size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<int>(i);
  for (const auto& [m, v] : a.terms()) c(pos.at(m)) = v;
  return c;
}

Form form_from_coords(int n, int k, const std::vector<Mask>& basis, const Eigen::VectorXd& c) {
  Form a(n, k);
  for (size_t i = 0; i < basis.size(); ++i) a.add_term(basis[i], c(static_cast<int>(i)));
  return a;
}

std::vector<Rational> qform_coords(const FormQ& a, const std::vector<Mask>& basis) {
  std::vector<Rational> c(basis.size());
  std::unordered_map<Mask, int> pos;
  for (size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<int>(i);
  for (const auto& [m, v] : a.terms()) c[pos.at(m)] = v;
  return c;
}

Eigen::MatrixXd forms_matrix(const std::vector<Form>& forms, const std::vector<Mask>& basis) {
  Eigen::MatrixXd m(static_cast<int>(basis.size()), static_cast<int>(forms.size()));
  for (size_t j = 0; j < forms.size(); ++j) m.col(static_cast<int>(j)) = form_coords(forms[j], basis);
  return m;
}

Eigen::MatrixXd rho_star_operator(const Form& w, int k) {
  const int n = w.n();
  const std::vector<Mask> basis = mask::monomials(n, k);
  Eigen::MatrixXd op(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    Form mono(n, k);
    mono.add_term(basis[j], 1.0);
    op.col(static_cast<int>(j)) = form_coords(rho_star(w, mono), basis);
  }
  return op;
}

QMat rho_star_operator_exact(const FormQ& w, int k) {
  const int n = w.n();
  const std::vector<Mask> basis = mask::monomials(n, k);
  const int d = static_cast<int>(basis.size());
  QMat op(d, d);
  for (int j = 0; j < d; ++j) {
    FormQ mono(n, k);
    mono.add_term(basis[j], Rational(1));
    const std::vector<Rational> col = qform_coords(rho_star(w, mono), basis);
    for (int i = 0; i < d; ++i) op(i, j) = col[i];
  }
  return op;
}

Eigen::MatrixXd wedge_operator(const Form& omega, int j) {
  const int n = omega.n();
  const std::vector<Mask> from = mask::monomials(n, j);
  const std::vector<Mask> to = mask::monomials(n, j + omega.degree());
  Eigen::MatrixXd op(static_cast<int>(to.size()), static_cast<int>(from.size()));
  for (size_t c = 0; c < from.size(); ++c) {
    Form mono(n, j);
    mono.add_term(from[c], 1.0);
    op.col(static_cast<int>(c)) = form_coords(wedge(omega, mono), to);
  }
  return op;
}

QMat wedge_operator_exact(const FormQ& omega, int j) {
  const int n = omega.n();
  const std::vector<Mask> from = mask::monomials(n, j);
  const std::vector<Mask> to = mask::monomials(n, j + omega.degree());
  QMat op(static_cast<int>(to.size()), static_cast<int>(from.size()));
  for (size_t c = 0; c < from.size(); ++c) {
    FormQ mono(n, j);
    mono.add_term(from[c], Rational(1));
    const std::vector<Rational> col = qform_coords(wedge(omega, mono), to);
    for (size_t i = 0; i < col.size(); ++i) op(static_cast<int>(i), static_cast<int>(c)) = col[i];
  }
  return op;
}

Form pullback(const Form& a, const Eigen::MatrixXd& m) {
  const int n = a.n();
  const int k = a.degree();
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("pullback: matrix shape mismatch");
  if (k == 0) return a;
  Form out(n, k);
  const std::vector<Mask> target = mask::monomials(n, k);
  Eigen::MatrixXd sub(k, k);
  for (Mask mj : target) {
    const std::vector<int> cols = mask::indices(mj);
    double acc = 0.0;
    for (const auto& [mi, v] : a.terms()) {
      const std::vector<int> rows = mask::indices(mi);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) sub(r, c) = m(rows[r] - 1, cols[c] - 1);
      acc += v * sub.determinant();
    }
    out.add_term(mj, acc);
  }
  return out;
}

std::vector<Form> orthonormalize(const std::vector<Form>& v, double drop_tol) {
  std::vector<Form> out;
  for (const Form& f : v) {
    Form w = f;
    for (const Form& u : out) w -= inner(w, u) * u;
    // second pass stabilizes nearly dependent inputs
    for (const Form& u : out) w -= inner(w, u) * u;
    const double nrm = std::sqrt(norm2(w));
    if (nrm < drop_tol) continue;
    out.push_back(w * (1.0 / nrm));
  }
  return out;
}

}  // namespace vtlab
