#include "vtlab/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "vtlab/linmap.hpp"

namespace vtlab {

std::vector<Vec> sample_points(const ChartMetric& m, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Vec> out;
  for (int p = 0; p < count; ++p) {
    Vec x(m.n);
    for (int i = 0; i < m.n; ++i) {
      const double width = m.box.hi(i) - m.box.lo(i);
      const double margin = 4.0 * m.deriv.h + 0.05 * width;
      x(i) = m.box.lo(i) + margin + (width - 2.0 * margin) * unif(rng);
    }
    out.push_back(std::move(x));
  }
  return out;
}

namespace {

double rel(double err, double scale) { return err / std::max(1.0, scale); }

double gnorm(const ChartMetric& m, const Form& coord_form, const Vec& x) {
  return std::sqrt(std::max(0.0, form_inner_g(m, coord_form, coord_form, x)));
}

Vec lee_sharp(const ChartModel& model, const Vec& x) {
  return sharp(model.metric.eval(x), model.lee(x));
}

struct Collector {
  std::vector<Check>& sink;
  double tol_scale;
  void add(const std::string& id, const std::string& anchor, double err, double tol,
           const std::string& details = "") {
    const double t = tol * tol_scale;
    sink.push_back({id, anchor, err, t, err <= t, details});
  }
};

Eigen::VectorXcd dgamma_clifford(const ChartModel& model, const CliffordRep& rep, const Vec& x) {
  const Form dg = dform(model.lee, model.n, x, model.metric.deriv);
  const Form dg_fr = to_frame(dg, frame(model.metric, x));
  return rep.action(dg_fr, model.spinor(x));
}

}  // namespace

std::vector<Check> verify_form_calculus(const ChartModel& model, const VerifyOptions& opt) {
  if (!model.invariant && !model.spinor)
    throw std::invalid_argument("verify_form_calculus: model carries no invariant form or spinor");
  std::vector<Check> checks;
  Collector col{checks, opt.tol_scale};
  const ChartMetric& m = model.metric;
  const int n = model.n;
  const auto pts = sample_points(m, opt.points, opt.seed ^ 0x11);
  const ConnectionSpec lc;

  if (model.invariant) {
    const int k = model.invariant_degree;
    double e_d = 0, e_cod = 0, e_ng = 0, e_dgw = 0, e_law = 0, e_cross = 0, e_dd = 0;
    std::mt19937_64 rng(opt.seed ^ 0x12);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (const Vec& x : pts) {
      const Mat g0 = m.eval(x);
      const Form om = model.invariant(x);
      const Form gam = model.lee(x);
      const Vec gs = sharp(g0, gam);
      const Form d_om = dform(model.invariant, n, x, m.deriv);
      const Form rhs_d = -static_cast<double>(k) * wedge(gam, om);
      e_d = std::max(e_d, rel(gnorm(m, d_om - rhs_d, x), gnorm(m, rhs_d, x)));
      if (k >= 1) {
        const Form cod = codifferential(m, model.invariant, x);
        const Form rhs_c = static_cast<double>(n - k) * interior_vec(gs, om);
        e_cod = std::max(e_cod, rel(gnorm(m, cod - rhs_c, x), gnorm(m, rhs_c, x)));
        e_cross = std::max(e_cross, gnorm(m, cod - codifferential_hodge(m, model.invariant, x), x));
      }
      e_ng = std::max(e_ng, gnorm(m, covariant_deriv_form(m, lc, model.invariant, gs, x), x));
      const Form d_gam = dform(model.lee, n, x, m.deriv);
      if (k + 2 <= n) e_dgw = std::max(e_dgw, gnorm(m, wedge(d_gam, om), x));
      Vec xdir(n);
      for (int i = 0; i < n; ++i) xdir(i) = unif(rng);
      const Form lhs_law = covariant_deriv_form(m, lc, model.invariant, xdir, x);
      const Form rhs_law =
          wedge(gam, interior_vec(xdir, om)) - wedge(flat_form(g0, xdir), interior_vec(gs, om));
      e_law = std::max(e_law, rel(gnorm(m, lhs_law - rhs_law, x), gnorm(m, rhs_law, x)));
    }
    col.add("dform-invariant", "d Omega^k = -k (Gamma ^ Omega^k)", e_d, 1e-5);
    if (k >= 1) {
      col.add("codiff-invariant", "delta Omega^k = (n-k) (Gamma -| Omega^k)", e_cod, 1e-5);
      col.add("codiff-cross", "plumbing", e_cross, 1e-6);
    }
    col.add("nabla-gamma-invariant", "nabla^g_Gamma Omega^k = 0", e_ng, 1e-5);
    if (k + 2 <= n) col.add("dgamma-wedge", "dGamma ^ Omega^k = 0", e_dgw, 1e-5);
    col.add("nabla-invariant-law", "nabla^g_X Omega = Gamma ^ (X -| Omega) - X ^ (Gamma -| Omega)",
            e_law, 1e-5);
    // d of d = 0 on the Gamma field itself
    FormField dlee = [&](const Vec& y) { return dform(model.lee, n, y, m.deriv); };
    for (const Vec& x : pts) e_dd = std::max(e_dd, gnorm(m, dform(dlee, n, x, m.deriv), x));
    col.add("d-o-d", "plumbing", e_dd, 1e-6);
  }

  if (model.spinor) {
    const CliffordRep rep(n);
    double e_sp = 0, e_vec = 0;
    std::mt19937_64 rng(opt.seed ^ 0x13);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (const Vec& x : pts) {
      const Mat g0 = m.eval(x);
      const Mat e = frame(m, x);
      Vec xdir(n);
      for (int i = 0; i < n; ++i) xdir(i) = unif(rng);
      const Spinor lhs = spinor_nabla(m, ConnectionSpec::levi_civita(), rep, model.spinor, xdir, x);
      Form xfr(n, 1);
      for (int a = 0; a < n; ++a) xfr.add_term(Mask{1} << a, (xdir.transpose() * g0 * e.col(a))(0));
      const Form gfr = to_frame(model.lee(x), e);
      const Spinor rhs = rep.spin_lift(wedge(xfr, gfr)) * model.spinor(x);
      e_sp = std::max(e_sp, (lhs - rhs).norm());
      const Spinor vec =
          spinor_nabla(m, ConnectionSpec::vectorial(model.lee), rep, model.spinor, xdir, x);
      e_vec = std::max(e_vec, vec.norm());
    }
    col.add("nabla-spinor", "nabla^g_X Psi = 1/2 (X ^ Gamma) . Psi", e_sp, 1e-5);
    col.add("nabla-vec-spinor", "nabla^vec Psi = 0", e_vec, 1e-5);
  }
  return checks;
}

std::vector<Check> verify_connections(const ChartModel& model, const VerifyOptions& opt) {
  std::vector<Check> checks;
  Collector col{checks, opt.tol_scale};
  const ChartMetric& m = model.metric;
  const int n = model.n;
  const auto pts = sample_points(m, opt.points, opt.seed ^ 0x21);
  std::mt19937_64 rng(opt.seed ^ 0x22);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  const ConnectionSpec lc;
  const ConnectionSpec vec = ConnectionSpec::vectorial(model.lee);
  const ConnectionSpec weyl = ConnectionSpec::weyl(model.lee);
  const bool has_t = static_cast<bool>(model.torsion3);
  const ConnectionSpec skew = has_t ? ConnectionSpec::skew(model.torsion3) : lc;

  double e_met_lc = 0, e_met_vec = 0, e_met_skew = 0, e_weyl_weight = 0;
  double e_tor_vec = 0, e_tor_weyl = 0, e_tor_skew = 0;
  double e_curv = 0, e_ric = 0, e_sym = 0;

  for (const Vec& x : pts) {
    const Mat g0 = m.eval(x);
    Vec xd(n), a(n), c(n);
    Mat by(n, n), bz(n, n);
    for (int i = 0; i < n; ++i) {
      xd(i) = unif(rng);
      a(i) = unif(rng);
      c(i) = unif(rng);
      for (int j = 0; j < n; ++j) {
        by(i, j) = 0.5 * unif(rng);
        bz(i, j) = 0.5 * unif(rng);
      }
    }
    VectorFieldFn yf = [a, by, x](const Vec& y) { return (a + by * (y - x)).eval(); };
    VectorFieldFn zf = [c, bz, x](const Vec& y) { return (c + bz * (y - x)).eval(); };
    auto gyz = [&](const Vec& y) { return (yf(y).transpose() * m.g(y) * zf(y))(0); };
    double dgyz = 0.0;
    for (int i = 0; i < n; ++i)
      if (xd(i) != 0.0) dgyz += xd(i) * fd_partial(gyz, x, i, m.deriv);
    auto metr = [&](const ConnectionSpec& spec) {
      return dgyz - (connection_nabla(m, spec, xd, yf, x).transpose() * g0 * zf(x))(0) -
             (yf(x).transpose() * g0 * connection_nabla(m, spec, xd, zf, x))(0);
    };
    e_met_lc = std::max(e_met_lc, std::abs(metr(lc)));
    e_met_vec = std::max(e_met_vec, std::abs(metr(vec)));
    if (has_t) e_met_skew = std::max(e_met_skew, std::abs(metr(skew)));
    const Vec gs = lee_sharp(model, x);
    const double gX = (xd.transpose() * g0 * gs)(0);
    e_weyl_weight = std::max(e_weyl_weight, std::abs(metr(weyl) + 2.0 * gX * gyz(x)));

    // torsion types, computed from the coefficient antisymmetry
    const std::vector<Mat> av = connection_coeffs(m, vec, x);
    const std::vector<Mat> aw = connection_coeffs(m, weyl, x);
    const Form gam = model.lee(x);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double tv = av[k](i, j) - av[k](j, i);
          const double expect = gam.coeff(std::vector<int>{j + 1}) * (k == i ? 1.0 : 0.0) -
                                gam.coeff(std::vector<int>{i + 1}) * (k == j ? 1.0 : 0.0);
          e_tor_vec = std::max(e_tor_vec, std::abs(tv - expect));
          e_tor_weyl = std::max(e_tor_weyl, std::abs(aw[k](i, j) - aw[k](j, i)));
        }
    if (has_t) {
      const std::vector<Mat> ac = connection_coeffs(m, skew, x);
      const Form t0 = model.torsion3(x);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            double tor = 0.0;  // g(T(d_i, d_j), d_l)
            for (int k = 0; k < n; ++k) tor += g0(l, k) * (ac[k](i, j) - ac[k](j, i));
            e_tor_skew = std::max(e_tor_skew, std::abs(tor - form_coeff_signed(t0, {i + 1, j + 1, l + 1})));
          }
    }

    // curvature comparison
    const CurvatureTensor rv = curvature(m, vec, x);
    const CurvatureTensor rw = curvature(m, weyl, x);
    const Form dgam = dform(model.lee, n, x, m.deriv);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const double dg = form_coeff_signed(dgam, {i + 1, j + 1});
        e_curv = std::max(
            e_curv, (rv(i, j) - rw(i, j) + dg * Mat::Identity(n, n)).cwiseAbs().maxCoeff());
      }
    const Mat ricv = ricci_from_curvature(rv);
    const Mat ricw = ricci_from_curvature(rw);
    Mat dgm = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dgm(i, j) = form_coeff_signed(dgam, {i + 1, j + 1});
    e_ric = std::max(e_ric, (ricv - ricw - dgm).cwiseAbs().maxCoeff());
    e_sym = std::max(
        e_sym, ((ricv + ricv.transpose()) - (ricw + ricw.transpose())).cwiseAbs().maxCoeff());
  }

  col.add("metricity-lc", "plumbing", e_met_lc, 1e-6);
  col.add("metricity-vectorial", "nabla^vec metric", e_met_vec, 1e-6);
  if (has_t) col.add("metricity-skew", "nabla^c metric", e_met_skew, 1e-6);
  col.add("weyl-weight", "(nabla^w g) = -2 g(X, Gamma) g", e_weyl_weight, 1e-6);
  col.add("torsion-vectorial", "T(X,Y) = g(Y,Gamma) X - g(X,Gamma) Y", e_tor_vec, 1e-6);
  col.add("torsion-weyl-free", "nabla^w torsion free", e_tor_weyl, 1e-6);
  if (has_t) col.add("torsion-skew", "torsion of nabla^c is T^c", e_tor_skew, 1e-6);
  col.add("curvature-vec-weyl", "R^vec(X,Y)Z = R^w(X,Y)Z - dGamma(X,Y) Z", e_curv, 1e-4);
  col.add("ricci-vec-weyl", "Ric^vec = Ric^w + dGamma", e_ric, 1e-4);
  col.add("ricci-sym-parts", "sym Ric^vec = sym Ric^w", e_sym, 1e-4);
  return checks;
}

std::vector<Check> verify_fixspinor_ricci(const ChartModel& model, const VerifyOptions& opt) {
  if (!model.spinor)
    throw std::invalid_argument("verify_fixspinor_ricci: model group has no invariant spinor");
  std::vector<Check> checks;
  Collector col{checks, opt.tol_scale};
  const ChartMetric& m = model.metric;
  const int n = model.n;
  const auto pts = sample_points(m, opt.points, opt.seed ^ 0x31);
  const ConnectionSpec lc;
  const CliffordRep rep(n);

  double e_ric = 0, e_scal = 0, e_cor = 0, e_dcl = 0, e_dg = 0;
  for (const Vec& x : pts) {
    const Mat g0 = m.eval(x);
    const Mat ginv = g0.inverse();
    const Mat ric = ricci(m, lc, x);
    const Mat ric_endo = ginv * ric;
    const Vec gs = lee_sharp(model, x);
    const double n2 = gs.dot(g0 * gs);
    const double dgamma = codifferential(m, model.lee, x).coeff(Mask{0});
    Mat nab(n, n);  // column j = (nabla_{d_j} Gamma)^sharp
    for (int j = 0; j < n; ++j) {
      Vec ej = Vec::Zero(n);
      ej(j) = 1.0;
      nab.col(j) = sharp(g0, covariant_deriv_form(m, lc, model.lee, ej, x));
    }
    auto a_of = [&](const Vec& X) {
      if (n2 < 1e-14) return Vec(Vec::Zero(n));
      const Vec xperp = X - (X.dot(g0 * gs) / n2) * gs;
      return Vec((n - 2.0) * n2 * xperp);
    };
    const double ric_scale = ric_endo.cwiseAbs().maxCoeff();
    if (n >= 5) {
      for (int j = 0; j < n; ++j) {
        Vec ej = Vec::Zero(n);
        ej(j) = 1.0;
        const Vec rhs = (n - 2.0) * nab.col(j) - dgamma * ej + a_of(ej);
        e_ric = std::max(e_ric, rel((ric_endo.col(j) - rhs).cwiseAbs().maxCoeff(), ric_scale));
      }
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Vec ei = Vec::Zero(n), ej = Vec::Zero(n);
          ei(i) = 1.0;
          ej(j) = 1.0;
          const double lhs = ric(i, j);
          const double rhs = (nab.col(i).transpose() * g0 * ej)(0) +
                             (nab.col(j).transpose() * g0 * ei)(0) - dgamma * g0(i, j) +
                             (a_of(ei).transpose() * g0 * ej)(0);
          e_ric = std::max(e_ric, rel(std::abs(lhs - rhs), ric_scale));
        }
    }
    const double scal_fd = (ginv * ric).trace();
    const double scal_formula = 2.0 * (1.0 - n) * dgamma + (n - 1.0) * (n - 2.0) * n2;
    e_scal = std::max(e_scal, rel(std::abs(scal_fd - scal_formula), std::abs(scal_formula)));

    auto norm2_field = [&](const Vec& y) {
      const Vec gy = sharp(m.eval(y), model.lee(y));
      return (gy.transpose() * m.g(y) * gy)(0);
    };
    double gdir = 0.0;
    for (int i = 0; i < n; ++i)
      if (gs(i) != 0.0) gdir += gs(i) * fd_partial(norm2_field, x, i, m.deriv);
    const double lhs_cor = (gs.transpose() * g0 * (ric_endo * gs))(0);
    const double rhs_cor = 0.5 * (n - 2.0) * gdir - dgamma * n2;
    e_cor = std::max(e_cor, rel(std::abs(lhs_cor - rhs_cor), std::abs(lhs_cor)));

    e_dcl = std::max(e_dcl, dgamma_clifford(model, rep, x).norm());
    if (n >= 5) {
      const Form dg = dform(model.lee, n, x, m.deriv);
      e_dg = std::max(e_dg, gnorm(m, dg, x));
    }
  }
  col.add("fixspinor-ricci", n >= 5 ? "Ric(X) = (n-2) nabla_X Gamma - delta(Gamma) X + A(X,Gamma)"
                                    : "sym Ricci formula in dimension 4",
          e_ric, 1e-5);
  col.add("fixspinor-scal", "Scal = 2(1-n) delta(Gamma) + (n-1)(n-2) |Gamma|^2", e_scal, 1e-5);
  col.add("fixspinor-corollary",
          "g(Ric Gamma, Gamma) = (n-2)/2 Gamma(|Gamma|^2) - delta(Gamma) |Gamma|^2", e_cor, 1e-5);
  col.add("dgamma-clifford", "dGamma . Psi = 0", e_dcl, 1e-5);
  if (n >= 5) col.add("dgamma-closed", "dGamma = 0 (n >= 5)", e_dg, 1e-5);
  return checks;
}

std::vector<Check> verify_section3_identities(const ChartModel& model, const VerifyOptions& opt) {
  if (!model.spinor || !model.torsion3)
    throw std::invalid_argument(
        "verify_section3_identities: model needs an invariant spinor and a characteristic torsion");
  std::vector<Check> checks;
  Collector col{checks, opt.tol_scale};
  const ChartMetric& m = model.metric;
  const int n = model.n;
  const auto pts = sample_points(m, opt.points, opt.seed ^ 0x41);
  const CliffordRep rep(n);
  const ConnectionSpec skew = ConnectionSpec::skew(model.torsion3);

  double e_int = 0, e_dt = 0, e_lin = 0, e_sq = 0, e_scal = 0;
  double e_dt_form = 0, e_norm = 0, e_g2scal = 0;
  for (const Vec& x : pts) {
    const Mat e = frame(m, x);
    const Spinor psi = model.spinor(x);
    const Form tfr = to_frame(model.torsion3(x), e);
    const Form gfr = to_frame(model.lee(x), e);
    const double gam2 = norm2(gfr);
    const double t2 = norm2(tfr);
    e_int = std::max(e_int, rep.action(interior(gfr, tfr), psi).norm());
    const Form dt = codifferential(m, model.torsion3, x);
    const Form dt_fr = to_frame(dt, e);
    e_dt = std::max(e_dt, rep.action(dt_fr, psi).norm());
    const Spinor t_psi = rep.action(tfr, psi);
    const Spinor g_psi = rep.action(gfr, psi);
    e_lin = std::max(e_lin, rel((t_psi - (2.0 / 3.0) * (n - 1.0) * g_psi).norm(),
                                (2.0 / 3.0) * (n - 1.0) * g_psi.norm()));
    const Spinor tt_psi = rep.action(tfr, t_psi);
    const double csq = (4.0 / 9.0) * (n - 1.0) * (n - 1.0) * gam2;
    e_sq = std::max(e_sq, rel((tt_psi - csq * psi).norm(), csq));
    const double dgamma = codifferential(m, model.lee, x).coeff(Mask{0});
    const double scal_c = scal(m, skew, x);
    const double lhs = 2.0 * (n - 1.0) * dgamma;
    const double rhs = 2.0 * (csq - t2) - scal_c;
    e_scal = std::max(e_scal, rel(std::abs(lhs - rhs), std::abs(scal_c)));
    if (n == 7) {
      e_dt_form = std::max(e_dt_form, gnorm(m, dt, x));
      e_norm = std::max(e_norm, std::abs(t2 - 4.0 * gam2));
      e_g2scal = std::max(e_g2scal, rel(std::abs(12.0 * dgamma - (6.0 * t2 - scal_c)),
                                        std::abs(scal_c)));
    }
  }
  col.add("tc-interior-clifford", "(Gamma -| T^c) . Psi = 0", e_int, 1e-5);
  col.add("tc-codiff-clifford", "delta(T^c) . Psi = 0", e_dt, 1e-5);
  col.add("tc-linear-clifford", "T^c . Psi = 2/3 (n-1) Gamma . Psi", e_lin, 1e-5);
  col.add("tc-square-clifford", "(T^c)^2 . Psi = 4/9 (n-1)^2 |Gamma|^2 Psi", e_sq, 1e-5);
  col.add("tc-scalar", "2(n-1) delta(Gamma) = 2(4/9 (n-1)^2 |Gamma|^2 - |T^c|^2) - Scal^c", e_scal,
          1e-5);
  if (n == 7) {
    col.add("g2-delta-tc", "delta(T^c) = 0 (G2)", e_dt_form, 1e-5);
    col.add("g2-torsion-norm", "|T^c|^2 = 4 |Gamma|^2 (G2)", e_norm, 1e-5);
    col.add("g2-scalar", "12 delta(Gamma) = 6 |T^c|^2 - Scal^c (G2)", e_g2scal, 1e-5);
  }
  return checks;
}

std::vector<Check> verify_hopf(const ChartModel& model, const VerifyOptions& opt) {
  if (!model.torsion3 || !model.jmap)
    throw std::invalid_argument("verify_hopf: hermitian model with characteristic torsion required");
  std::vector<Check> checks;
  Collector col{checks, opt.tol_scale};
  const ChartMetric& m = model.metric;
  const int n = model.n;
  const auto pts = sample_points(m, opt.points, opt.seed ^ 0x51);
  const ConnectionSpec lc;
  const ConnectionSpec skew = ConnectionSpec::skew(model.torsion3);

  double e_ncg = 0, e_dg = 0, e_dtc = 0, e_dgi = 0, e_2ng = 0, e_kill = 0;
  double e_unit = 0, e_ngg = 0, e_dgz = 0, e_starj = 0;
  double e_tc = 0, e_jkill = 0, e_jgamma = 0;
  double lee_scale = 0.0;
  for (const Vec& x : pts)
    lee_scale = std::max(lee_scale, gnorm(m, model.lee(x), x));
  const bool degenerate = lee_scale < 1e-12;  // flat Kaehler input: Gamma = 0
  for (const Vec& x : pts) {
    const Mat g0 = m.eval(x);
    const Vec gs = lee_sharp(model, x);
    const Form gam = model.lee(x);
    Mat nab_c(n, n), nab_g(n, n);  // coordinate components of nabla Gamma (1-form)
    for (int j = 0; j < n; ++j) {
      Vec ej = Vec::Zero(n);
      ej(j) = 1.0;
      const Form dc = covariant_deriv_form(m, skew, model.lee, ej, x);
      const Form dgp = covariant_deriv_form(m, lc, model.lee, ej, x);
      for (int i = 0; i < n; ++i) {
        nab_c(j, i) = dc.coeff(std::vector<int>{i + 1});
        nab_g(j, i) = dgp.coeff(std::vector<int>{i + 1});
      }
    }
    e_ncg = std::max(e_ncg, nab_c.cwiseAbs().maxCoeff());
    e_dg = std::max(e_dg, std::abs(codifferential(m, model.lee, x).coeff(Mask{0})));
    e_dtc = std::max(e_dtc, gnorm(m, codifferential(m, model.torsion3, x), x));
    const Form dgam = dform(model.lee, n, x, m.deriv);
    const Form gi_tc = interior_vec(gs, model.torsion3(x));
    e_dgi = std::max(e_dgi, gnorm(m, dgam - gi_tc, x));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        e_2ng = std::max(e_2ng,
                         std::abs(2.0 * nab_g(i, j) - form_coeff_signed(dgam, {i + 1, j + 1})));
        e_kill = std::max(e_kill, std::abs(nab_g(i, j) + nab_g(j, i)));
      }
    e_unit = std::max(e_unit, std::abs(std::sqrt(gs.dot(g0 * gs)) - 1.0));
    e_ngg = std::max(e_ngg, nab_g.cwiseAbs().maxCoeff());
    e_dgz = std::max(e_dgz, gnorm(m, dgam, x));

    const Mat j0 = model.jmap(x);
    if (n == 4) {
      const Form d_om = dform(model.invariant, n, x, m.deriv);
      const Form jd = pullback(d_om, (-j0).eval());  // push-forward action on odd forms
      const Form star_jd = hodge_g(m, jd, x);
      e_starj = std::max(e_starj, gnorm(m, star_jd - 2.0 * gam, x));
    } else {
      const Form jgam = flat_form(g0, j0 * gs);
      const Form expect = 2.0 * wedge(jgam, model.invariant(x));
      e_tc = std::max(e_tc, gnorm(m, model.torsion3(x) - expect, x));
      e_jgamma = std::max(e_jgamma, gnorm(m, interior_vec(gs, model.invariant(x)) - jgam, x));
      FormField jg_field = [&](const Vec& y) {
        const Mat gy = m.eval(y);
        return flat_form(gy, model.jmap(y) * sharp(gy, model.lee(y)));
      };
      Mat njg(n, n);
      for (int j = 0; j < n; ++j) {
        Vec ej = Vec::Zero(n);
        ej(j) = 1.0;
        const Form d = covariant_deriv_form(m, lc, jg_field, ej, x);
        for (int i = 0; i < n; ++i) njg(j, i) = d.coeff(std::vector<int>{i + 1});
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e_jkill = std::max(e_jkill, std::abs(njg(i, j) + njg(j, i)));
    }
  }
  col.add("nabla-c-gamma", "nabla^c Gamma = 0 (generalized Hopf)", e_ncg, 1e-5);
  col.add("delta-gamma", "delta(Gamma) = 0", e_dg, 1e-5);
  col.add("delta-tc", "delta(T^c) = 0", e_dtc, 1e-5);
  col.add("dgamma-interior-tc", "dGamma = Gamma -| T^c", e_dgi, 1e-5);
  col.add("two-nabla-gamma", "2 nabla^g Gamma = dGamma", e_2ng, 1e-5);
  col.add("gamma-killing", "Gamma is a Killing field", e_kill, 1e-5);
  if (!degenerate) col.add("lee-unit", n == 4 ? "|Gamma| = 1 (Hopf surface)" : "|Gamma| = 1", e_unit, 1e-6);
  col.add("nabla-g-gamma", "nabla^g Gamma = 0", e_ngg, 1e-5);
  if (n == 4) {
    col.add("dgamma-zero", "dGamma = 0", e_dgz, 1e-5);
    col.add("star-j-domega", "2 Gamma = * J(d Omega)", e_starj, 1e-5);
  } else {
    col.add("tc-closed-form", "T^c = 2 (J Gamma ^ Omega)", e_tc, 1e-5);
    col.add("jgamma-interior", "Gamma -| Omega = J Gamma", e_jgamma, 1e-5);
    col.add("jgamma-killing", "J Gamma is a Killing field", e_jkill, 1e-5);
  }
  return checks;
}

std::vector<Check> verify_foliation(const ChartModel& model, const VerifyOptions& opt) {
  if (!model.invariant || model.invariant_degree != 1)
    throw std::invalid_argument("verify_foliation: warped model with unit 1-form required");
  std::vector<Check> checks;
  Collector col{checks, opt.tol_scale};
  const ChartMetric& m = model.metric;
  const int n = model.n;
  const auto pts = sample_points(m, opt.points, opt.seed ^ 0x61);
  const ConnectionSpec lc;

  double e_dom = 0, e_umb = 0, e_gam = 0, e_nvec = 0, e_wdg = 0;
  for (const Vec& x : pts) {
    const Mat g0 = m.eval(x);
    const Form om = model.invariant(x);
    const Form gam = model.lee(x);
    const Vec ns = sharp(g0, om);
    const Vec gs = sharp(g0, gam);
    const double og = ns.dot(g0 * gs);  // g(Omega, Gamma)
    const Form d_om = dform(model.invariant, n, x, m.deriv);
    e_dom = std::max(e_dom, gnorm(m, d_om - wedge(om, gam), x));
    const std::vector<Mat> chris = christoffel(m, x);
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) {
        double ii = 0.0;  // second fundamental form with normal Omega^sharp
        for (int k = 0; k < n; ++k) ii += chris[k](i, j) * (g0.row(k) * ns)(0);
        e_umb = std::max(e_umb, std::abs(ii - og * g0(i, j)));
      }
    const Form nabla_n_om = covariant_deriv_form(m, lc, model.invariant, ns, x);
    e_gam = std::max(e_gam, gnorm(m, gam - (nabla_n_om + og * om), x));
    const ConnectionSpec vec = ConnectionSpec::vectorial(model.lee);
    for (int j = 0; j < n; ++j) {
      Vec ej = Vec::Zero(n);
      ej(j) = 1.0;
      e_nvec = std::max(e_nvec, gnorm(m, covariant_deriv_form(m, vec, model.invariant, ej, x), x));
    }
    const Form dgam = dform(model.lee, n, x, m.deriv);
    e_wdg = std::max(e_wdg, gnorm(m, wedge(om, dgam), x));
  }
  col.add("foliation-domega", "d Omega = Omega ^ Gamma", e_dom, 1e-5);
  col.add("foliation-umbilic", "II = g(Omega, Gamma) g on the leaves", e_umb, 1e-5);
  col.add("foliation-gamma", "Gamma = nabla_Omega Omega + g(Omega, Gamma) Omega", e_gam, 1e-5);
  col.add("foliation-nabla-vec", "nabla^vec Omega = 0", e_nvec, 1e-5);
  col.add("foliation-omega-dgamma", "Omega ^ dGamma = 0", e_wdg, 1e-5);
  return checks;
}

std::vector<Check> verify_vec_rigidity(const ChartModel& model, const VerifyOptions& opt) {
  std::vector<Check> checks;
  Collector col{checks, opt.tol_scale};
  const ChartMetric& m = model.metric;
  const int n = model.n;
  const auto pts = sample_points(m, opt.points, opt.seed ^ 0x71);
  const ConnectionSpec vec = ConnectionSpec::vectorial(model.lee);

  int premise_points = 0;
  double worst_premise = 0.0, best_premise = 1e300, e_impl = 0;
  for (const Vec& x : pts) {
    const Mat g0 = m.eval(x);
    double premise = 0.0;
    for (int j = 0; j < n; ++j) {
      Vec ej = Vec::Zero(n);
      ej(j) = 1.0;
      premise = std::max(premise, gnorm(m, covariant_deriv_form(m, vec, model.lee, ej, x), x));
    }
    best_premise = std::min(best_premise, premise);
    worst_premise = std::max(worst_premise, premise);
    if (premise <= 1e-6) {
      ++premise_points;
      const Vec gs = sharp(g0, model.lee(x));
      const double dgamma = codifferential(m, model.lee, x).coeff(Mask{0});
      e_impl = std::max(e_impl, std::abs(dgamma - (n - 1.0) * gs.dot(g0 * gs)));
    }
  }
  std::string details = "premise satisfied at " + std::to_string(premise_points) + "/" +
                        std::to_string(static_cast<int>(pts.size())) +
                        " points (min residual " + std::to_string(best_premise) + ")";
  if (premise_points == 0) details += "; implication vacuous";
  col.add("vec-rigidity", "nabla^vec Gamma = 0 => delta(Gamma) = (n-1) |Gamma|^2", e_impl, 1e-5,
          details);
  return checks;
}

}  // namespace vtlab
