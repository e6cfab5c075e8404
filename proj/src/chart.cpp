#include "vtlab/chart.hpp"

#include <Eigen/Cholesky>

#include "vtlab/linmap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vtlab {

bool Box::contains(const Vec& x, double margin) const {
  if (x.size() != lo.size()) return false;
  for (int i = 0; i < x.size(); ++i)
    if (x(i) < lo(i) + margin || x(i) > hi(i) - margin) return false;
  return true;
}

Mat ChartMetric::eval(const Vec& x) const {
  Mat m = g(x);
  if (m.rows() != n || m.cols() != n) throw std::runtime_error("ChartMetric: wrong matrix shape");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw std::runtime_error("ChartMetric: metric not symmetric");
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) throw std::runtime_error("ChartMetric: metric not positive definite");
  return m;
}

void ChartMetric::check_margin(const Vec& x) const {
  if (!box.contains(x, 4.0 * deriv.h))
    throw std::invalid_argument("ChartMetric: point violates the 4h interior margin");
}

double fd_partial(const ScalarField& f, const Vec& x, int i, const DerivPolicy& p) {
  auto central = [&](double h) {
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    return (f(xp) - f(xm)) / (2.0 * h);
  };
  const double d1 = central(p.h);
  if (!p.richardson) return d1;
  const double d2 = central(0.5 * p.h);
  return (4.0 * d2 - d1) / 3.0;
}

Vec fd_partial(const VectorFieldFn& f, const Vec& x, int i, const DerivPolicy& p) {
  auto central = [&](double h) {
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    return ((f(xp) - f(xm)) / (2.0 * h)).eval();
  };
  const Vec d1 = central(p.h);
  if (!p.richardson) return d1;
  const Vec d2 = central(0.5 * p.h);
  return (4.0 * d2 - d1) / 3.0;
}

Form interior_vec(const Vec& v, const Form& a) {
  Form out(a.n(), a.degree() - 1);
  for (int i = 0; i < v.size(); ++i) {
    if (v(i) == 0.0) continue;
    out += v(i) * interior_basis(i + 1, a);
  }
  return out;
}

double form_coeff_signed(const Form& f, std::vector<int> idx1) {
  int sign = 1;
  for (size_t i = 1; i < idx1.size(); ++i)
    for (size_t j = i; j > 0 && idx1[j] < idx1[j - 1]; --j) {
      std::swap(idx1[j], idx1[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < idx1.size(); ++i)
    if (idx1[i] == idx1[i - 1]) return 0.0;
  return sign * f.coeff(mask::from_indices(idx1));
}

std::vector<Mat> christoffel(const ChartMetric& m, const Vec& x) {
  const int n = m.n;
  const Mat g0 = m.eval(x);
  const Mat ginv = g0.inverse();
  std::vector<Mat> dg(n);
  auto gflat = [&](const Vec& y) {
    const Mat gy = m.g(y);
    return Eigen::Map<const Vec>(gy.data(), gy.size()).eval();
  };
  for (int i = 0; i < n; ++i) {
    const Vec d = fd_partial(gflat, x, i, m.deriv);
    dg[i] = Eigen::Map<const Mat>(d.data(), n, n);
  }
  std::vector<Mat> chris(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        chris[k](i, j) = chris[k](j, i) = 0.5 * acc;
      }
  return chris;
}

std::vector<Mat> connection_coeffs(const ChartMetric& m, const ConnectionSpec& spec, const Vec& x) {
  const int n = m.n;
  std::vector<Mat> a = christoffel(m, x);
  if (spec.kind == ConnectionSpec::Kind::levi_civita) return a;
  const Mat g0 = m.eval(x);
  const Mat ginv = g0.inverse();
  if (spec.kind == ConnectionSpec::Kind::vectorial || spec.kind == ConnectionSpec::Kind::weyl) {
    if (!spec.gamma) throw std::invalid_argument("connection_coeffs: missing gamma field");
    const Form gm = spec.gamma(x);
    Vec cov = Vec::Zero(n);
    for (int i = 0; i < n; ++i) cov(i) = gm.coeff(std::vector<int>{i + 1});
    const Vec con = ginv * cov;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double corr = -g0(i, j) * con(k) + cov(j) * (k == i ? 1.0 : 0.0);
          if (spec.kind == ConnectionSpec::Kind::weyl) corr += cov(i) * (k == j ? 1.0 : 0.0);
          a[k](i, j) += corr;
        }
    return a;
  }
  // skew: A^k_{ij} += 1/2 g^{kl} T_{ijl}
  if (!spec.torsion3) throw std::invalid_argument("connection_coeffs: missing torsion field");
  const Form t = spec.torsion3(x);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) {
          const double tv = form_coeff_signed(t, {i + 1, j + 1, l + 1});
          if (tv != 0.0) acc += ginv(k, l) * tv;
        }
        a[k](i, j) += 0.5 * acc;
      }
  return a;
}

Vec connection_nabla(const ChartMetric& m, const ConnectionSpec& spec, const Vec& X,
                     const VectorFieldFn& Y, const Vec& x) {
  m.check_margin(x);
  const int n = m.n;
  const std::vector<Mat> a = connection_coeffs(m, spec, x);
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (X(i) == 0.0) continue;
    out += X(i) * fd_partial(Y, x, i, m.deriv);
  }
  const Vec y0 = Y(x);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(k) += X(i) * a[k](i, j) * y0(j);
  return out;
}

Form covariant_deriv_form(const ChartMetric& m, const ConnectionSpec& spec, const FormField& F,
                          const Vec& X, const Vec& x) {
  const int n = m.n;
  const Form f0 = F(x);
  const int k = f0.degree();
  // directional derivative of the coefficient functions
  Form dirderiv(n, k);
  auto accumulate = [&](double h, double w) {
    for (int i = 0; i < n; ++i) {
      if (X(i) == 0.0) continue;
      Vec xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      dirderiv += (w * X(i) / (2.0 * h)) * (F(xp) - F(xm));
    }
  };
  if (m.deriv.richardson) {
    accumulate(m.deriv.h, -1.0 / 3.0);
    accumulate(0.5 * m.deriv.h, 4.0 / 3.0);
  } else {
    accumulate(m.deriv.h, 1.0);
  }
  if (k == 0) return dirderiv;

  const std::vector<Mat> a = connection_coeffs(m, spec, x);
  Mat ax = Mat::Zero(n, n);  // ax(mm, j) = X^i A^mm_{ij}
  for (int mm = 0; mm < n; ++mm)
    for (int i = 0; i < n; ++i)
      if (X(i) != 0.0) ax.row(mm) += X(i) * a[mm].row(i);

  Form out = dirderiv;
  for (Mask target : mask::monomials(n, k)) {
    const std::vector<int> idx = mask::indices(target);
    double corr = 0.0;
    for (int s = 0; s < k; ++s) {
      for (int mm = 1; mm <= n; ++mm) {
        const double w = ax(mm - 1, idx[s] - 1);
        if (w == 0.0) continue;
        std::vector<int> sub = idx;
        sub[s] = mm;
        const double c = form_coeff_signed(f0, sub);
        if (c != 0.0) corr += w * c;
      }
    }
    out.add_term(target, -corr);
  }
  return out;
}

CurvatureTensor curvature(const ChartMetric& m, const ConnectionSpec& spec, const Vec& x) {
  m.check_margin(x);
  const int n = m.n;
  auto coeff_flat = [&](const Vec& y) {
    const std::vector<Mat> a = connection_coeffs(m, spec, y);
    Vec out(n * n * n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out((k * n + i) * n + j) = a[k](i, j);
    return out;
  };
  const std::vector<Mat> a = connection_coeffs(m, spec, x);
  std::vector<Vec> da(n);
  for (int i = 0; i < n; ++i) da[i] = fd_partial(coeff_flat, x, i, m.deriv);
  auto d = [&](int dir, int l, int i, int j) { return da[dir]((l * n + i) * n + j); };

  CurvatureTensor r;
  r.n = n;
  r.comp.assign(static_cast<size_t>(n) * n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Mat& c = r.comp[static_cast<size_t>(i) * n + j];
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
          double acc = d(i, l, j, k) - d(j, l, i, k);
          for (int mm = 0; mm < n; ++mm) acc += a[l](i, mm) * a[mm](j, k) - a[l](j, mm) * a[mm](i, k);
          c(l, k) = acc;
        }
    }
  return r;
}

Mat ricci_from_curvature(const CurvatureTensor& r) {
  const int n = r.n;
  Mat ric = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += r(i, j)(i, k);
      ric(j, k) = acc;
    }
  return ric;
}

Mat ricci(const ChartMetric& m, const ConnectionSpec& spec, const Vec& x) {
  return ricci_from_curvature(curvature(m, spec, x));
}

double scal(const ChartMetric& m, const ConnectionSpec& spec, const Vec& x) {
  const Mat ric = ricci(m, spec, x);
  return (m.eval(x).inverse() * ric).trace();
}

Form dform(const FormField& F, int n, const Vec& x, const DerivPolicy& p) {
  const Form f0 = F(x);
  Form out(n, f0.degree() + 1);
  for (int i = 0; i < n; ++i) {
    auto accumulate = [&](double h, double w) {
      Vec xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      return (w / (2.0 * h)) * (F(xp) - F(xm));
    };
    Form di = p.richardson
                  ? accumulate(0.5 * p.h, 4.0 / 3.0) + accumulate(p.h, -1.0 / 3.0)
                  : accumulate(p.h, 1.0);
    out += wedge(Form::monomial(n, {i + 1}), di);
  }
  return out;
}

Form codifferential(const ChartMetric& m, const FormField& F, const Vec& x) {
  m.check_margin(x);
  const int n = m.n;
  const Mat e = frame(m, x);
  const ConnectionSpec lc;
  Form out(n, F(x).degree() - 1);
  for (int a = 0; a < n; ++a) {
    const Vec ea = e.col(a);
    out -= interior_vec(ea, covariant_deriv_form(m, lc, F, ea, x));
  }
  return out;
}

Form codifferential_hodge(const ChartMetric& m, const FormField& F, const Vec& x) {
  m.check_margin(x);
  const int n = m.n;
  const int k = F(x).degree();
  auto star_field = [&](const Vec& y) { return hodge_g(m, F(y), y); };
  const Form dstar = dform(star_field, n, x, m.deriv);
  const int sign = ((n * (k + 1) + 1) % 2 == 0) ? 1 : -1;
  return static_cast<double>(sign) * hodge_g(m, dstar, x);
}

Mat frame(const ChartMetric& m, const Vec& x) {
  const int n = m.n;
  const Mat g0 = m.eval(x);
  Mat e = Mat::Identity(n, n);
  for (int a = 0; a < n; ++a) {
    Vec v = e.col(a);
    for (int rep = 0; rep < 2; ++rep)
      for (int b = 0; b < a; ++b) v -= (v.transpose() * g0 * e.col(b))(0) * e.col(b);
    const double nrm = std::sqrt((v.transpose() * g0 * v)(0));
    e.col(a) = v / nrm;
  }
  return e;
}

Form to_frame(const Form& coord_form, const Mat& e) { return pullback(coord_form, e); }

Form to_coords(const Form& frame_form, const Mat& e) { return pullback(frame_form, e.inverse()); }

Form hodge_g(const ChartMetric& m, const Form& coord_form, const Vec& x) {
  const Mat e = frame(m, x);
  return to_coords(hodge(to_frame(coord_form, e)), e);
}

double form_inner_g(const ChartMetric& m, const Form& a, const Form& b, const Vec& x) {
  const Mat e = frame(m, x);
  return inner(to_frame(a, e), to_frame(b, e));
}

Vec sharp(const Mat& g_at_x, const Form& one_form) {
  const int n = static_cast<int>(g_at_x.rows());
  Vec cov = Vec::Zero(n);
  for (int i = 0; i < n; ++i) cov(i) = one_form.coeff(std::vector<int>{i + 1});
  return g_at_x.inverse() * cov;
}

Form flat_form(const Mat& g_at_x, const Vec& v) {
  const int n = static_cast<int>(g_at_x.rows());
  const Vec cov = g_at_x * v;
  Form out(n, 1);
  for (int i = 0; i < n; ++i) out.add_term(Mask{1} << i, cov(i));
  return out;
}

Form frame_connection_form(const ChartMetric& m, const Vec& X, const Vec& x) {
  const int n = m.n;
  const Mat g0 = m.eval(x);
  const Mat e = frame(m, x);
  const std::vector<Mat> chris = christoffel(m, x);
  auto eflat = [&](const Vec& y) {
    const Mat ey = frame(m, y);
    return Eigen::Map<const Vec>(ey.data(), ey.size()).eval();
  };
  Mat de = Mat::Zero(n, n);  // directional derivative of the frame matrix
  for (int i = 0; i < n; ++i) {
    if (X(i) == 0.0) continue;
    const Vec d = fd_partial(eflat, x, i, m.deriv);
    de += X(i) * Eigen::Map<const Mat>(d.data(), n, n);
  }
  Mat gx = Mat::Zero(n, n);  // Gamma(X)^k_j
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (X(i) != 0.0) gx.row(k) += X(i) * chris[k].row(i);
  const Mat cov = de + gx * e;  // columns: nabla_X e_a in coordinates
  Form w(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      w.add_term((Mask{1} << a) | (Mask{1} << b), (cov.col(a).transpose() * g0 * e.col(b))(0));
  return w;
}

Spinor spinor_nabla(const ChartMetric& m, const ConnectionSpec& spec, const CliffordRep& rep,
                    const SpinorField& psi, const Vec& X, const Vec& x) {
  m.check_margin(x);
  if (spec.kind == ConnectionSpec::Kind::weyl)
    throw std::invalid_argument("spinor_nabla: the Weyl connection has no spinor lift here");
  const int n = m.n;
  const Spinor psi0 = psi(x);
  Spinor out = Spinor::Zero(psi0.size());
  // directional derivative of the frame components
  auto accumulate = [&](double h, double w) {
    for (int i = 0; i < n; ++i) {
      if (X(i) == 0.0) continue;
      Vec xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      out += (w * X(i) / (2.0 * h)) * (psi(xp) - psi(xm));
    }
  };
  if (m.deriv.richardson) {
    accumulate(m.deriv.h, -1.0 / 3.0);
    accumulate(0.5 * m.deriv.h, 4.0 / 3.0);
  } else {
    accumulate(m.deriv.h, 1.0);
  }
  const Form w = frame_connection_form(m, X, x);
  out += rep.spin_lift(w) * psi0;

  if (spec.kind == ConnectionSpec::Kind::vectorial) {
    if (!spec.gamma) throw std::invalid_argument("spinor_nabla: missing gamma field");
    const Mat g0 = m.eval(x);
    const Mat e = frame(m, x);
    Form xfr(n, 1);
    for (int a = 0; a < n; ++a) xfr.add_term(Mask{1} << a, (X.transpose() * g0 * e.col(a))(0));
    const Form gfr = to_frame(spec.gamma(x), e);
    out -= rep.spin_lift(wedge(xfr, gfr)) * psi0;
  } else if (spec.kind == ConnectionSpec::Kind::skew) {
    if (!spec.torsion3) throw std::invalid_argument("spinor_nabla: missing torsion field");
    const Mat e = frame(m, x);
    const Form half = 0.5 * to_frame(interior_vec(X, spec.torsion3(x)), e);
    out += rep.spin_lift(half) * psi0;
  }
  return out;
}

}  // namespace vtlab
