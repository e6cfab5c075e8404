#include "vtlab/clifford.hpp"

#include <stdexcept>

#include "vtlab/qlinalg.hpp"

namespace vtlab {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

CliffordRep::CliffordRep(int n) : n_(n) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("CliffordRep: n out of range");
  const int m = n / 2;
  dim_ = 1 << m;
  perm_.assign(n, std::vector<int>(dim_));
  phase_.assign(n, std::vector<std::complex<double>>(dim_));

  // gamma_j = i * A_j with Hermitian anticommuting A_j built from Pauli
  // factors; factor t = 1 is the most significant bit of the basis index.
  //   A_{2k-1} = s3^(k-1) x s1 x 1...,  A_{2k} = s3^(k-1) x s2 x 1...,
  //   A_{2m+1} = s3^m (odd n).
  for (int j = 0; j < n; ++j) {
    const int k = j / 2;            // 0-based factor carrying s1/s2
    const bool odd_tail = (j == 2 * m);
    for (int b = 0; b < dim_; ++b) {
      std::complex<double> ph = kI;
      int out = b;
      for (int t = 0; t < m; ++t) {
        const int bit = (b >> (m - 1 - t)) & 1;
        if (odd_tail || t < k) {
          if (bit == 1) ph = -ph;  // s3
        } else if (t == k) {
          out ^= 1 << (m - 1 - t);  // s1 or s2 flips the bit
          if (j % 2 == 1) ph *= (bit == 0) ? kI : -kI;  // s2 phases
        }
      }
      perm_[j][b] = out;
      phase_[j][b] = ph;
    }
  }
}

Spinor CliffordRep::apply(int i, const Spinor& psi) const {
  if (i < 1 || i > n_) throw std::invalid_argument("CliffordRep: generator index out of range");
  if (psi.size() != dim_) throw std::invalid_argument("CliffordRep: spinor dimension mismatch");
  Spinor out = Spinor::Zero(dim_);
  const auto& p = perm_[i - 1];
  const auto& ph = phase_[i - 1];
  for (int b = 0; b < dim_; ++b) out(p[b]) += ph[b] * psi(b);
  return out;
}

Eigen::MatrixXcd CliffordRep::generator(int i) const {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim_, dim_);
  const auto& p = perm_[i - 1];
  const auto& ph = phase_[i - 1];
  for (int b = 0; b < dim_; ++b) g(p[b], b) = ph[b];
  return g;
}

Spinor CliffordRep::action(const Form& a, const Spinor& psi) const {
  if (a.n() != n_) throw std::invalid_argument("CliffordRep: form dimension mismatch");
  if (psi.size() != dim_) throw std::invalid_argument("CliffordRep: spinor dimension mismatch");
  Spinor out = Spinor::Zero(dim_);
  for (const auto& [m, v] : a.terms()) {
    Spinor tmp = psi;
    const std::vector<int> idx = mask::indices(m);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) tmp = apply(*it, tmp);
    out += v * tmp;
  }
  return out;
}

Eigen::MatrixXcd CliffordRep::action_operator(const Form& a) const {
  Eigen::MatrixXcd op(dim_, dim_);
  Spinor basis = Spinor::Zero(dim_);
  for (int b = 0; b < dim_; ++b) {
    basis(b) = 1.0;
    op.col(b) = action(a, basis);
    basis(b) = 0.0;
  }
  return op;
}

Eigen::MatrixXcd CliffordRep::spin_lift(const Form& two_form) const {
  if (two_form.degree() != 2) throw std::invalid_argument("spin_lift: degree-2 form required");
  return 0.5 * action_operator(two_form);
}

Spinor CliffordRep::volume_apply(const Spinor& psi) const {
  Spinor out = psi;
  for (int i = n_; i >= 1; --i) out = apply(i, out);
  return out;
}

Eigen::MatrixXcd invariant_spinors(const CliffordRep& rep, const std::vector<Form>& two_forms,
                                   double rel_tol) {
  const int dim = rep.dim();
  if (two_forms.empty()) return Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd stacked(static_cast<int>(two_forms.size()) * dim, dim);
  for (size_t a = 0; a < two_forms.size(); ++a)
    stacked.middleRows(static_cast<int>(a) * dim, dim) = rep.spin_lift(two_forms[a]);
  Eigen::MatrixXcd kernel = nullspace_svd(stacked, rel_tol);
  // deterministic phase: rotate the largest-magnitude component to be real > 0
  for (int c = 0; c < kernel.cols(); ++c) {
    int arg = 0;
    double best = -1.0;
    for (int r = 0; r < kernel.rows(); ++r) {
      const double mag = std::abs(kernel(r, c));
      if (mag > best + 1e-12) {
        best = mag;
        arg = r;
      }
    }
    if (best > 0.0) kernel.col(c) *= std::conj(kernel(arg, c)) / std::abs(kernel(arg, c));
  }
  return kernel;
}

std::vector<Form> spinor_isotropy_two_forms(const CliffordRep& rep, const Spinor& psi,
                                            double rel_tol) {
  if (psi.norm() == 0.0) throw std::invalid_argument("spinor_isotropy_two_forms: zero spinor");
  const int n = rep.n();
  const std::vector<Mask> basis = mask::monomials(n, 2);
  Eigen::MatrixXd stacked(2 * rep.dim(), static_cast<int>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) {
    Form mono(n, 2);
    mono.add_term(basis[c], 1.0);
    const Spinor image = rep.action(mono, psi);
    stacked.col(static_cast<int>(c)).head(rep.dim()) = image.real();
    stacked.col(static_cast<int>(c)).tail(rep.dim()) = image.imag();
  }
  const Eigen::MatrixXd kernel = nullspace_svd(stacked, rel_tol);
  std::vector<Form> out;
  for (int c = 0; c < kernel.cols(); ++c) {
    Form w(n, 2);
    for (size_t r = 0; r < basis.size(); ++r) w.add_term(basis[r], kernel(static_cast<int>(r), c));
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace vtlab
