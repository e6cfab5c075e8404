#pragma once

#include <Eigen/Dense>

#include <vector>

#include "vtlab/form.hpp"
#include "vtlab/qlinalg.hpp"

namespace vtlab {

/// Two-form <-> skew matrix identification. Convention, fixed by the
/// vectorial connection formula: the endomorphism of X ^ G acts as
///   (X ^ G)(Y) = g(X,Y) G - g(G,Y) X,
/// so e_i ^ e_j maps e_i -> e_j and e_j -> -e_i.
Eigen::MatrixXd two_form_to_matrix(const Form& w);
Form matrix_to_two_form(const Eigen::MatrixXd& m);
QMat two_form_to_qmat(const FormQ& w);
FormQ qmat_to_two_form(const QMat& m);

/// Coordinates of a form in the lexicographic monomial basis of Lambda^k.
Eigen::VectorXd form_coords(const Form& a, const std::vector<Mask>& basis);
Form form_from_coords(int n, int k, const std::vector<Mask>& basis, const Eigen::VectorXd& c);
std::vector<Rational> qform_coords(const FormQ& a, const std::vector<Mask>& basis);

/// Matrix whose columns are the coordinates of the given forms.
Eigen::MatrixXd forms_matrix(const std::vector<Form>& forms, const std::vector<Mask>& basis);

/// Matrix of rho_star(w) acting on Lambda^k, lexicographic monomial basis.
Eigen::MatrixXd rho_star_operator(const Form& w, int k);
QMat rho_star_operator_exact(const FormQ& w, int k);

/// Matrix of eta |-> omega ^ eta,  Lambda^j -> Lambda^{j + deg omega}.
Eigen::MatrixXd wedge_operator(const Form& omega, int j);
QMat wedge_operator_exact(const FormQ& omega, int j);

/// Pullback of a k-form along the linear map M: (M* a)(v...) = a(Mv, ...).
Form pullback(const Form& a, const Eigen::MatrixXd& m);

/// Reinterpret a form on R^n as a form on R^{new_n} (new_n >= n).
template <class S>
FormT<S> embed(const FormT<S>& a, int new_n) {
  FormT<S> out(new_n, a.degree());
  for (const auto& [m, v] : a.terms()) out.add_term(m, v);
  return out;
}

/// Modified Gram-Schmidt over forms; near-dependent vectors are dropped.
std::vector<Form> orthonormalize(const std::vector<Form>& v, double drop_tol = 1e-10);

}  // namespace vtlab
