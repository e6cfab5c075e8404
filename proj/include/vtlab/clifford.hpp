#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "vtlab/form.hpp"

namespace vtlab {

/// Element of the complex spin module Delta_n, dimension 2^floor(n/2).
using Spinor = Eigen::VectorXcd;

/// Matrix model of Cl(n) with the Riemannian convention e_i . e_i = -1.
/// Generators are stored as signed permutations (tensor products of Pauli
/// matrices times i), so applying one to a spinor costs O(dim).
class CliffordRep {
 public:
  explicit CliffordRep(int n);

  int n() const { return n_; }
  int dim() const { return dim_; }

  /// Apply gamma_i (1-based basis index) to a spinor.
  Spinor apply(int i, const Spinor& psi) const;

  /// Dense matrix of gamma_i.
  Eigen::MatrixXcd generator(int i) const;

  /// Clifford action of a form: a basis monomial e_{i1}^...^e_{ik} acts as
  /// gamma_{i1} ... gamma_{ik}; extended linearly.
  Spinor action(const Form& a, const Spinor& psi) const;
  Eigen::MatrixXcd action_operator(const Form& a) const;

  /// Spin lift of a 2-form: lambda(w) = 1/2 clifford(w). Satisfies
  /// [lambda(w), gamma(X)] = gamma(w . X) for the fixed two-form/matrix
  /// convention.
  Eigen::MatrixXcd spin_lift(const Form& two_form) const;

  /// Volume element gamma_1 ... gamma_n applied to a spinor.
  Spinor volume_apply(const Spinor& psi) const;

 private:
  int n_ = 0;
  int dim_ = 0;
  std::vector<std::vector<int>> perm_;
  std::vector<std::vector<std::complex<double>>> phase_;
};

/// Orthonormal basis (columns) of the joint kernel of the spin lifts of the
/// given 2-forms. Deterministic phase convention: the component of largest
/// magnitude is made real positive.
Eigen::MatrixXcd invariant_spinors(const CliffordRep& rep, const std::vector<Form>& two_forms,
                                   double rel_tol = 1e-9);

/// Basis of the real subspace {w in Lambda^2 : w . psi = 0}.
std::vector<Form> spinor_isotropy_two_forms(const CliffordRep& rep, const Spinor& psi,
                                            double rel_tol = 1e-9);

}  // namespace vtlab
