#include "vtlab/qlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace vtlab {

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat QMat::transpose() const {
  QMat t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMat QMat::operator*(const QMat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("QMat: product shape mismatch");
  QMat out(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Rational& v = (*this)(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < o.c_; ++j) {
        if (o(k, j).is_zero()) continue;
        out(i, j) += v * o(k, j);
      }
    }
  return out;
}

QMat QMat::operator+(const QMat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("QMat: sum shape mismatch");
  QMat out(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
  return out;
}

QMat QMat::operator-(const QMat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("QMat: difference shape mismatch");
  QMat out(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
  return out;
}

bool QMat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& v) { return v.is_zero(); });
}

Eigen::MatrixXd QMat::to_float() const {
  Eigen::MatrixXd m(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(i, j) = to_double((*this)(i, j));
  return m;
}

namespace {

// Bit-size heuristic used for pivot selection; small pivots limit coefficient
// growth during exact elimination.
size_t entry_weight(const Rational& q) {
  using boost::multiprecision::msb;
  const BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(q));
  const BigInt den = boost::multiprecision::denominator(q);
  size_t w = 0;
  if (!num.is_zero()) w += msb(num);
  if (den != 1) w += msb(den);
  return w;
}

}  // namespace

std::vector<int> QMat::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < c_ && row < r_; ++col) {
    int best = -1;
    size_t best_w = 0;
    for (int i = row; i < r_; ++i) {
      const Rational& v = (*this)(i, col);
      if (v.is_zero()) continue;
      const size_t w = entry_weight(v);
      if (best < 0 || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (best < 0) continue;
    if (best != row)
      for (int j = 0; j < c_; ++j) std::swap((*this)(best, j), (*this)(row, j));
    const Rational pivot = (*this)(row, col);
    for (int j = col; j < c_; ++j) (*this)(row, j) /= pivot;
    for (int i = 0; i < r_; ++i) {
      if (i == row) continue;
      const Rational f = (*this)(i, col);
      if (f.is_zero()) continue;
      for (int j = col; j < c_; ++j) (*this)(i, j) -= f * (*this)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int QMat::rank() const {
  QMat tmp = *this;
  return static_cast<int>(tmp.rref().size());
}

QMat QMat::nullspace() const {
  QMat tmp = *this;
  const std::vector<int> pivots = tmp.rref();
  std::vector<bool> is_pivot(c_, false);
  for (int p : pivots) is_pivot[p] = true;
  const int nullity = c_ - static_cast<int>(pivots.size());
  QMat basis(c_, nullity);
  int out = 0;
  for (int free_col = 0; free_col < c_; ++free_col) {
    if (is_pivot[free_col]) continue;
    basis(free_col, out) = 1;
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      basis(pivots[pr], out) = -tmp(static_cast<int>(pr), free_col);
    ++out;
  }
  return basis;
}

bool QMat::solve(const QMat& rhs, QMat* sol) const {
  if (rhs.r_ != r_) throw std::invalid_argument("QMat: solve shape mismatch");
  QMat aug(r_, c_ + rhs.c_);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
    for (int j = 0; j < rhs.c_; ++j) aug(i, c_ + j) = rhs(i, j);
  }
  // eliminate only over the coefficient columns
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < c_ && row < r_; ++col) {
    int best = -1;
    size_t best_w = 0;
    for (int i = row; i < r_; ++i) {
      const Rational& v = aug(i, col);
      if (v.is_zero()) continue;
      const size_t w = entry_weight(v);
      if (best < 0 || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (best < 0) continue;
    if (best != row)
      for (int j = 0; j < aug.c_; ++j) std::swap(aug(best, j), aug(row, j));
    const Rational pivot = aug(row, col);
    for (int j = col; j < aug.c_; ++j) aug(row, j) /= pivot;
    for (int i = 0; i < r_; ++i) {
      if (i == row) continue;
      const Rational f = aug(i, col);
      if (f.is_zero()) continue;
      for (int j = col; j < aug.c_; ++j) aug(i, j) -= f * aug(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  for (int i = row; i < r_; ++i)
    for (int j = 0; j < rhs.c_; ++j)
      if (!aug(i, c_ + j).is_zero()) return false;
  if (sol != nullptr) {
    *sol = QMat(c_, rhs.c_);
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      for (int j = 0; j < rhs.c_; ++j) (*sol)(pivots[pr], j) = aug(static_cast<int>(pr), c_ + j);
  }
  return true;
}

QMat QMat::inverse() const {
  if (r_ != c_) throw std::invalid_argument("QMat: inverse of non-square matrix");
  QMat sol;
  if (!solve(identity(r_), &sol) || sol.rows() != r_)
    throw std::runtime_error("QMat: singular matrix");
  // solve() returns garbage-free full solution only when rank == n
  QMat check = (*this) * sol - identity(r_);
  if (!check.is_zero()) throw std::runtime_error("QMat: singular matrix");
  return sol;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1;
  while (e != 0) {
    if (e & 1) acc = mulmod(acc, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return acc;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

std::uint64_t big_mod(const BigInt& v, std::uint64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

}  // namespace

int rank_mod_p(const QMat& m, std::uint64_t p) {
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const Rational& q = m(i, j);
      const std::uint64_t num = big_mod(boost::multiprecision::numerator(q), p);
      const std::uint64_t den = big_mod(boost::multiprecision::denominator(q), p);
      if (den == 0) throw std::invalid_argument("rank_mod_p: prime divides a denominator");
      a[i][j] = mulmod(num, invmod(den, p), p);
    }
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[pivot], a[rank]);
    const std::uint64_t inv = invmod(a[rank][col], p);
    for (int j = col; j < cols; ++j) a[rank][j] = mulmod(a[rank][j], inv, p);
    for (int i = rank + 1; i < rows; ++i) {
      const std::uint64_t f = a[i][col];
      if (f == 0) continue;
      for (int j = col; j < cols; ++j) {
        const std::uint64_t sub = mulmod(f, a[rank][j], p);
        a[i][j] = (a[i][j] >= sub) ? a[i][j] - sub : a[i][j] + p - sub;
      }
    }
    ++rank;
  }
  return rank;
}

int rank_svd(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

Eigen::MatrixXd nullspace_svd(const Eigen::MatrixXd& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 && sv(0) > 0.0) ? rel_tol * sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

Eigen::MatrixXcd nullspace_svd(const Eigen::MatrixXcd& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 && sv(0) > 0.0) ? rel_tol * sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("subspace_distance: shape mismatch");
  if (a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b);
  const double smallest_cos = svd.singularValues().minCoeff();
  return 1.0 - std::min(1.0, smallest_cos);
}

}  // namespace vtlab
