#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <vector>

#include "vtlab/rational.hpp"

namespace vtlab {

/// Basis monomials of the exterior algebra over R^n (n <= 16) are subsets of
/// {1..n} stored as bitmasks, bit i-1 <-> basis index i.
using Mask = std::uint32_t;

inline constexpr int kMaxDim = 16;

namespace mask {

inline int degree(Mask m) { return std::popcount(m); }

/// Lexicographic order on the strictly increasing index tuples. This is the
/// canonical key order of every sparse form map and of serialized output.
inline bool lex_less(Mask a, Mask b) {
  while (a != 0 && b != 0) {
    const int ia = std::countr_zero(a);
    const int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

/// Sign of e_A ^ e_B relative to the merged increasing tuple; A, B disjoint.
inline int merge_sign(Mask a, Mask b) {
  int inversions = 0;
  Mask rest = b;
  while (rest != 0) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));
    rest &= rest - 1;
  }
  return (inversions & 1) ? -1 : 1;
}

/// Sign picked up by e_i -| e_M when bit i is removed from M.
inline int interior_sign(Mask m, int bit) {
  const int below = std::popcount(m & ((Mask{1} << bit) - 1));
  return (below & 1) ? -1 : 1;
}

inline std::vector<int> indices(Mask m) {  // 1-based
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

inline Mask from_indices(const std::vector<int>& idx1) {
  Mask m = 0;
  for (int i : idx1) {
    if (i < 1 || i > kMaxDim) throw std::invalid_argument("index out of range");
    const Mask bit = Mask{1} << (i - 1);
    if (m & bit) throw std::invalid_argument("repeated index in monomial");
    m |= bit;
  }
  return m;
}

/// All degree-k monomials of Lambda^k(R^n), in lexicographic tuple order.
inline std::vector<Mask> monomials(int n, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    Mask m = 0;
    for (int i : c) m |= Mask{1} << i;
    out.push_back(m);
    int pos = k - 1;
    while (pos >= 0 && c[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++c[pos];
    for (int i = pos + 1; i < k; ++i) c[i] = c[i - 1] + 1;
  }
  return out;
}

}  // namespace mask

struct LexMaskLess {
  bool operator()(Mask a, Mask b) const { return mask::lex_less(a, b); }
};

/// Sparse antisymmetric k-tensor on R^n in an orthonormal basis. Only
/// canonical (strictly increasing) index tuples are stored and zero entries
/// are dropped eagerly. The scalar backend is the template parameter.
template <class S>
class FormT {
 public:
  using Terms = std::map<Mask, S, LexMaskLess>;

  FormT() = default;
  FormT(int n, int k) : n_(n), k_(k) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("form dimension out of range");
    if (k < 0 || k > n) throw std::invalid_argument("form degree out of range");
  }

  static FormT monomial(int n, const std::vector<int>& idx1, S coeff = S(1)) {
    FormT f(n, static_cast<int>(idx1.size()));
    // accept any ordering of distinct indices, tracking the permutation sign
    Mask m = 0;
    int sign = 1;
    for (int i : idx1) {
      if (i < 1 || i > n) throw std::invalid_argument("index out of range");
      const Mask bit = Mask{1} << (i - 1);
      if (m & bit) return f;  // repeated index wedges to zero
      sign *= mask::merge_sign(m, bit);
      m |= bit;
    }
    f.add_term(m, sign > 0 ? coeff : S(-coeff));
    return f;
  }

  static FormT scalar(int n, S value) {
    FormT f(n, 0);
    f.add_term(0, value);
    return f;
  }

  int n() const { return n_; }
  int degree() const { return k_; }
  bool is_zero() const { return c_.empty(); }
  const Terms& terms() const { return c_; }

  S coeff(Mask m) const {
    auto it = c_.find(m);
    return it == c_.end() ? S(0) : it->second;
  }
  S coeff(const std::vector<int>& idx1) const { return coeff(mask::from_indices(idx1)); }

  void add_term(Mask m, const S& v) {
    if (mask::degree(m) != k_) throw std::invalid_argument("monomial degree mismatch");
    if (scalar_traits<S>::is_zero(v)) return;
    auto [it, inserted] = c_.try_emplace(m, v);
    if (!inserted) {
      it->second += v;
      if (scalar_traits<S>::is_zero(it->second)) c_.erase(it);
    }
  }

  FormT& operator+=(const FormT& o) {
    check_same_shape(o);
    for (const auto& [m, v] : o.c_) add_term(m, v);
    return *this;
  }
  FormT& operator-=(const FormT& o) {
    check_same_shape(o);
    for (const auto& [m, v] : o.c_) add_term(m, S(-v));
    return *this;
  }
  FormT& operator*=(const S& s) {
    if (scalar_traits<S>::is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& [m, v] : c_) v *= s;
    return *this;
  }

  friend FormT operator+(FormT a, const FormT& b) { return a += b; }
  friend FormT operator-(FormT a, const FormT& b) { return a -= b; }
  friend FormT operator*(FormT a, const S& s) { return a *= s; }
  friend FormT operator*(const S& s, FormT a) { return a *= s; }
  friend FormT operator-(FormT a) { return a *= S(-1); }

  bool operator==(const FormT& o) const { return n_ == o.n_ && k_ == o.k_ && c_ == o.c_; }

 private:
  void check_same_shape(const FormT& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw std::invalid_argument("form shape mismatch");
  }

  int n_ = 1;
  int k_ = 0;
  Terms c_;
};

using Form = FormT<double>;
using FormQ = FormT<Rational>;

template <class S>
FormT<S> wedge(const FormT<S>& a, const FormT<S>& b) {
  if (a.n() != b.n()) throw std::invalid_argument("wedge: dimension mismatch");
  const int k = a.degree() + b.degree();
  if (k > a.n()) throw std::invalid_argument("wedge: degree overflow");
  FormT<S> out(a.n(), k);
  for (const auto& [ma, va] : a.terms()) {
    for (const auto& [mb, vb] : b.terms()) {
      if (ma & mb) continue;
      const int sign = mask::merge_sign(ma, mb);
      out.add_term(ma | mb, sign > 0 ? S(va * vb) : S(-(va * vb)));
    }
  }
  return out;
}

/// Interior product v -| a for a degree-1 form v (general vector allowed).
template <class S>
FormT<S> interior(const FormT<S>& v, const FormT<S>& a) {
  if (v.n() != a.n()) throw std::invalid_argument("interior: dimension mismatch");
  if (v.degree() != 1) throw std::invalid_argument("interior: contraction argument must have degree 1");
  if (a.degree() < 1) throw std::invalid_argument("interior: cannot contract a degree-0 form");
  FormT<S> out(a.n(), a.degree() - 1);
  for (const auto& [mv, vv] : v.terms()) {
    const int bit = std::countr_zero(mv);
    for (const auto& [ma, va] : a.terms()) {
      if (!(ma & mv)) continue;
      const int sign = mask::interior_sign(ma, bit);
      out.add_term(ma & ~mv, sign > 0 ? S(vv * va) : S(-(vv * va)));
    }
  }
  return out;
}

/// Interior product with the i-th basis vector (1-based), degree k -> k-1.
template <class S>
FormT<S> interior_basis(int i, const FormT<S>& a) {
  if (a.degree() < 1) throw std::invalid_argument("interior: cannot contract a degree-0 form");
  FormT<S> out(a.n(), a.degree() - 1);
  const Mask mv = Mask{1} << (i - 1);
  for (const auto& [ma, va] : a.terms()) {
    if (!(ma & mv)) continue;
    const int sign = mask::interior_sign(ma, i - 1);
    out.add_term(ma & ~mv, sign > 0 ? va : S(-va));
  }
  return out;
}

/// Hodge star for the orientation e_1 ^ ... ^ e_n.
template <class S>
FormT<S> hodge(const FormT<S>& a) {
  const int n = a.n();
  const Mask full = (n == 32) ? ~Mask{0} : ((Mask{1} << n) - 1);
  FormT<S> out(n, n - a.degree());
  for (const auto& [m, v] : a.terms()) {
    const Mask mc = full & ~m;
    const int sign = mask::merge_sign(m, mc);
    out.add_term(mc, sign > 0 ? v : S(-v));
  }
  return out;
}

template <class S>
S inner(const FormT<S>& a, const FormT<S>& b) {
  if (a.n() != b.n() || a.degree() != b.degree())
    throw std::invalid_argument("inner: shape mismatch");
  S acc(0);
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  auto ia = ta.begin();
  auto ib = tb.begin();
  while (ia != ta.end() && ib != tb.end()) {
    if (ia->first == ib->first) {
      acc += ia->second * ib->second;
      ++ia;
      ++ib;
    } else if (mask::lex_less(ia->first, ib->first)) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return acc;
}

template <class S>
S norm2(const FormT<S>& a) {
  return inner(a, a);
}

/// so(n) action on Lambda^k:  rho(w) O = sum_i (e_i -| w) ^ (e_i -| O).
template <class S>
FormT<S> rho_star(const FormT<S>& w, const FormT<S>& omega) {
  if (w.n() != omega.n()) throw std::invalid_argument("rho_star: dimension mismatch");
  if (w.degree() != 2) throw std::invalid_argument("rho_star: action argument must have degree 2");
  FormT<S> out(omega.n(), omega.degree());
  if (omega.degree() == 0) return out;
  for (int i = 1; i <= omega.n(); ++i) {
    const FormT<S> wi = interior_basis(i, w);
    if (wi.is_zero()) continue;
    const FormT<S> oi = interior_basis(i, omega);
    if (oi.is_zero()) continue;
    out += wedge(wi, oi);
  }
  return out;
}

inline Form to_float(const FormQ& a) {
  Form out(a.n(), a.degree());
  for (const auto& [m, v] : a.terms()) out.add_term(m, to_double(v));
  return out;
}

inline FormQ to_exact(const Form& a) {
  FormQ out(a.n(), a.degree());
  for (const auto& [m, v] : a.terms()) out.add_term(m, Rational(v));
  return out;
}

}  // namespace vtlab
