#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vtlab/linmap.hpp"
#include "vtlab/verify.hpp"

using namespace vtlab;

namespace {

ChartMetric conformal_metric(int n, double amp, const DerivPolicy& pol) {
  ChartMetric m;
  m.n = n;
  m.box.lo = Vec::Constant(n, -0.5);
  m.box.hi = Vec::Constant(n, 0.5);
  m.deriv = pol;
  m.g = [n, amp](const Vec& x) {
    const double f = amp * (std::sin(x(0)) + std::cos(x(1)));
    return (std::exp(2.0 * f) * Mat::Identity(n, n)).eval();
  };
  return m;
}

}  // namespace

TEST_CASE("flat metric: Christoffels and curvature vanish") {
  ChartMetric m;
  m.n = 3;
  m.box.lo = Vec::Constant(3, -1.0);
  m.box.hi = Vec::Constant(3, 1.0);
  m.g = [](const Vec&) { return Mat::Identity(3, 3).eval(); };
  const Vec x = Vec::Constant(3, 0.2);
  for (const Mat& ch : christoffel(m, x)) CHECK(ch.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ricci(m, ConnectionSpec::levi_civita(), x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("margin and positivity preconditions") {
  ChartMetric m;
  m.n = 2;
  m.box.lo = Vec::Constant(2, -0.1);
  m.box.hi = Vec::Constant(2, 0.1);
  m.g = [](const Vec&) { return Mat::Identity(2, 2).eval(); };
  Vec edge = Vec::Constant(2, 0.1);
  CHECK_THROWS_AS(curvature(m, ConnectionSpec::levi_civita(), edge), std::invalid_argument);
  ChartMetric bad = m;
  bad.g = [](const Vec&) { return (-Mat::Identity(2, 2)).eval(); };
  CHECK_THROWS_AS(bad.eval(Vec::Zero(2)), std::runtime_error);
}

TEST_CASE("stereographic sphere has constant scalar curvature d(d-1)") {
  const int d = 3;
  ChartMetric m;
  m.n = d;
  m.box.lo = Vec::Constant(d, -0.4);
  m.box.hi = Vec::Constant(d, 0.4);
  m.g = [d](const Vec& x) {
    const double c = 4.0 / std::pow(1.0 + x.squaredNorm(), 2);
    return (c * Mat::Identity(d, d)).eval();
  };
  for (const Vec& x : sample_points(m, 4, 99))
    CHECK(scal(m, ConnectionSpec::levi_civita(), x) == doctest::Approx(6.0).epsilon(1e-7));
}

TEST_CASE("conformally flat Ricci matches the classical formula") {
  const int n = 4;
  ChartMetric m = conformal_metric(n, 0.1, {});
  for (const Vec& x : sample_points(m, 4, 100)) {
    Vec df = Vec::Zero(n);
    df(0) = 0.1 * std::cos(x(0));
    df(1) = -0.1 * std::sin(x(1));
    Mat hess = Mat::Zero(n, n);
    hess(0, 0) = -0.1 * std::sin(x(0));
    hess(1, 1) = -0.1 * std::cos(x(1));
    const Mat expect = -(n - 2.0) * (hess - df * df.transpose()) -
                       (hess.trace() + (n - 2.0) * df.squaredNorm()) * Mat::Identity(n, n);
    CHECK((ricci(m, ConnectionSpec::levi_civita(), x) - expect).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("first Bianchi identity and Ricci symmetry for Levi-Civita") {
  const ChartModel model = make_model("generic", {}, {});
  for (const Vec& x : sample_points(model.metric, 2, 101)) {
    const CurvatureTensor r = curvature(model.metric, ConnectionSpec::levi_civita(), x);
    const int n = model.n;
    double bianchi = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (i == j || j == k || i == k) continue;
          for (int l = 0; l < n; ++l)
            bianchi = std::max(bianchi,
                               std::abs(r(i, j)(l, k) + r(j, k)(l, i) + r(k, i)(l, j)));
        }
    CHECK(bianchi < 1e-6);
    const Mat ric = ricci_from_curvature(r);
    CHECK((ric - ric.transpose()).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("finite-difference convergence: halving h shrinks changes by at least 4x") {
  for (const std::string& name : {std::string("generic"), std::string("conformal_g2"),
                                  std::string("hopf_surface"), std::string("foliation")}) {
    const ChartModel model = make_model(name, {}, {});
    const Vec x = 0.5 * (model.metric.box.lo + model.metric.box.hi) + Vec::Constant(model.n, 0.03);
    auto at_step = [&](double h) {
      ChartMetric m = model.metric;
      m.deriv.h = h;
      const Mat ric = ricci(m, ConnectionSpec::levi_civita(), x);
      Eigen::Vector2d q;
      q << (m.eval(x).inverse() * ric).trace(), ric(0, std::min(1, model.n - 1));
      return q;
    };
    const Eigen::Vector2d q1 = at_step(0.04), q2 = at_step(0.02), q3 = at_step(0.01);
    for (int i = 0; i < 2; ++i) {
      const double change1 = std::abs(q1(i) - q2(i));
      const double change2 = std::abs(q2(i) - q3(i));
      CHECK((change2 <= 0.3 * change1 || change2 < 1e-10));
    }
  }
}

TEST_CASE("d of d vanishes and the two codifferential routes agree") {
  const ChartModel model = make_model("generic", {}, {});
  const int n = model.n;
  FormField omega = [n](const Vec& y) {
    Form o(n, 2);
    o.add_term(mask::from_indices({1, 2}), std::sin(y(2)));
    o.add_term(mask::from_indices({3, 4}), y(0) * y(1));
    return o;
  };
  FormField domega = [&](const Vec& y) { return dform(omega, n, y, model.metric.deriv); };
  for (const Vec& x : sample_points(model.metric, 3, 102)) {
    CHECK(std::sqrt(norm2(dform(domega, n, x, model.metric.deriv))) < 1e-10);
    const Form a = codifferential(model.metric, omega, x);
    const Form b = codifferential_hodge(model.metric, omega, x);
    CHECK(std::sqrt(norm2(a - b)) < 1e-8);
  }
  // flat sanity value: delta(f dx1) = -d1 f
  ChartMetric flat;
  flat.n = n;
  flat.box = model.metric.box;
  flat.g = [n](const Vec&) { return Mat::Identity(n, n).eval(); };
  FormField one = [n](const Vec& y) {
    Form o(n, 1);
    o.add_term(Mask{1}, y(0) * y(0) + y(1));
    return o;
  };
  const Vec x = Vec::Constant(n, 0.17);
  CHECK(codifferential(flat, one, x).coeff(Mask{0}) == doctest::Approx(-2.0 * x(0)).epsilon(1e-8));
}

TEST_CASE("frames are orthonormal and oriented") {
  const ChartModel model = make_model("generic", {}, {});
  for (const Vec& x : sample_points(model.metric, 3, 103)) {
    const Mat g0 = model.metric.eval(x);
    const Mat e = frame(model.metric, x);
    CHECK((e.transpose() * g0 * e - Mat::Identity(model.n, model.n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(e.determinant() > 0.0);
  }
}

TEST_CASE("spinor derivative satisfies the Leibniz rule over Clifford multiplication") {
  const ChartModel model = make_model("conformal_su2", {}, {});
  const ChartMetric& m = model.metric;
  const int n = model.n;
  const CliffordRep rep(n);
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  // a varying vector field in coordinates
  VectorFieldFn vf = [n](const Vec& y) {
    Vec v(n);
    v << std::sin(y(1)), 0.4, y(3), 0.3 * y(0);
    return v;
  };
  auto frame_components = [&](const Vec& y, const Vec& v) {
    const Mat gy = m.eval(y);
    const Mat ey = frame(m, y);
    Form out(n, 1);
    for (int a = 0; a < n; ++a) out.add_term(Mask{1} << a, (v.transpose() * gy * ey.col(a))(0));
    return out;
  };
  SpinorField vpsi = [&](const Vec& y) {
    return rep.action(frame_components(y, vf(y)), model.spinor(y)).eval();
  };
  for (const Vec& x : sample_points(m, 3, 105)) {
    Vec xd(n);
    for (int i = 0; i < n; ++i) xd(i) = unif(rng);
    const Spinor lhs = spinor_nabla(m, ConnectionSpec::levi_civita(), rep, vpsi, xd, x);
    const Vec nv = connection_nabla(m, ConnectionSpec::levi_civita(), xd, vf, x);
    const Spinor rhs =
        rep.action(frame_components(x, nv), model.spinor(x)) +
        rep.action(frame_components(x, vf(x)),
                   spinor_nabla(m, ConnectionSpec::levi_civita(), rep, model.spinor, xd, x));
    CHECK((lhs - rhs).norm() < 1e-5);
  }
}

TEST_CASE("flat metric with a constant spinor is parallel") {
  const ChartModel flat = make_model("conformal_su2", {{"amp", 0.0}}, {});
  const CliffordRep rep(4);
  const Vec x = Vec::Constant(4, 0.1);
  Vec dir = Vec::Zero(4);
  dir(2) = 1.0;
  const Spinor d = spinor_nabla(flat.metric, ConnectionSpec::levi_civita(), rep, flat.spinor, dir, x);
  CHECK(d.norm() < 1e-12);
}

TEST_CASE("degenerate inputs: every identity reduces to 0 = 0") {
  VerifyOptions opt;
  opt.points = 3;
  // Gamma = 0 conformal models
  const ChartModel su2_flat = make_model("conformal_su2", {{"amp", 0.0}}, {});
  for (const Check& c : verify_fixspinor_ricci(su2_flat, opt)) CHECK(c.pass);
  const ChartModel g2_flat = make_model("conformal_g2", {{"amp", 0.0}}, {});
  for (const Check& c : verify_section3_identities(g2_flat, opt)) CHECK(c.pass);
  for (const Check& c : verify_fixspinor_ricci(g2_flat, opt)) CHECK(c.pass);
  // flat Kaehler surface with Gamma = 0: the Hopf identities hold vacuously
  ChartModel flat_kaehler = make_model("flat", {{"n", 4}}, {});
  const Form omega0 = to_float(kaehler_form(2));
  flat_kaehler.invariant = [omega0](const Vec&) { return omega0; };
  flat_kaehler.invariant_degree = 2;
  flat_kaehler.torsion3 = [](const Vec&) { return Form(4, 3); };
  Mat j0 = Mat::Zero(4, 4);
  j0(1, 0) = j0(3, 2) = 1.0;
  j0(0, 1) = j0(2, 3) = -1.0;
  flat_kaehler.jmap = [j0](const Vec&) { return j0; };
  for (const Check& c : verify_hopf(flat_kaehler, opt)) {
    CHECK(c.pass);
    CHECK(c.id != "lee-unit");  // the unit normalization is skipped for Gamma = 0
  }
}

TEST_CASE("weyl connection has no spinor lift here") {
  const ChartModel model = make_model("conformal_su2", {}, {});
  const CliffordRep rep(4);
  const Vec x = Vec::Constant(4, 0.1);
  CHECK_THROWS_AS(
      spinor_nabla(model.metric, ConnectionSpec::weyl(model.lee), rep, model.spinor, Vec::Ones(4), x),
      std::invalid_argument);
}

TEST_CASE("model catalog and parameter validation") {
  CHECK_THROWS_AS(make_model("no_such_model", {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_model("flat", {{"bogus", 1.0}}, {}), std::invalid_argument);
  for (const std::string& name : model_catalog()) {
    const ChartModel m = make_model(name, {}, {});
    CHECK(m.n >= 2);
    CHECK(m.lee != nullptr);
  }
}

TEST_CASE("form coefficient lookup handles unsorted indices") {
  Form f(4, 2);
  f.add_term(mask::from_indices({1, 3}), 2.0);
  CHECK(form_coeff_signed(f, {1, 3}) == 2.0);
  CHECK(form_coeff_signed(f, {3, 1}) == -2.0);
  CHECK(form_coeff_signed(f, {1, 1}) == 0.0);
}
