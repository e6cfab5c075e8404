#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "vtlab/rational.hpp"

namespace vtlab {

/// Dense matrix over the exact rationals. Small: used for subalgebra
/// projectors, invariant-subspace solves and rank certificates.
class QMat {
 public:
  QMat() = default;
  QMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static QMat identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }

  Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  QMat transpose() const;
  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  bool is_zero() const;

  Eigen::MatrixXd to_float() const;

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<int> rref();

  int rank() const;
  /// Columns span the exact kernel (free variables set to 1).
  QMat nullspace() const;
  /// Exact linear solve A x = rhs (any shape). Returns false when the system
  /// is inconsistent; otherwise *sol holds the particular solution with all
  /// free variables zero.
  bool solve(const QMat& rhs, QMat* sol) const;
  QMat inverse() const;  // square, nonsingular

 private:
  int r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

/// Rank of a rational matrix by Gaussian elimination over F_p. Ranks mod p
/// never exceed the rank over Q, so a full-column-rank result is an exact
/// certificate.
int rank_mod_p(const QMat& m, std::uint64_t p = (std::uint64_t{1} << 61) - 1);

/// Numerical rank with a relative singular-value threshold.
int rank_svd(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

/// Orthonormal basis of the numerical kernel (columns).
Eigen::MatrixXd nullspace_svd(const Eigen::MatrixXd& m, double rel_tol = 1e-9);
Eigen::MatrixXcd nullspace_svd(const Eigen::MatrixXcd& m, double rel_tol = 1e-9);

/// Largest principal-angle gap between the column spans of two orthonormal
/// bases; 0 means identical subspaces.
double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace vtlab
