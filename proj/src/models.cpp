#include "vtlab/models.hpp"

#include <cmath>
#include <stdexcept>

#include "vtlab/clifford.hpp"
#include "vtlab/linmap.hpp"
#include "vtlab/torsion.hpp"

namespace vtlab {

std::vector<std::string> model_catalog() {
  return {"flat",         "conformal_g2", "conformal_su2", "conformal_spin7", "hopf_surface",
          "hopf6",        "foliation",    "vec_parallel",  "radial_flat",     "generic"};
}

std::vector<Form> torsion_basis_map(const SubalgebraBasis& b) {
  std::vector<Form> out;
  for (int i = 1; i <= b.n; ++i) {
    const CharTorsion ct = characteristic_torsion(Form::monomial(b.n, {i}), b);
    if (ct.status != CharTorsion::Status::solved)
      throw std::runtime_error("torsion_basis_map: group admits no characteristic torsion");
    out.push_back(ct.torsion);
  }
  return out;
}

namespace {

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

void expect_empty(const std::map<std::string, double>& params, const std::string& model) {
  if (!params.empty())
    throw std::invalid_argument("make_model: unknown parameter '" + params.begin()->first +
                                "' for model " + model);
}

Box centered_box(int n, double half, double center0 = 0.0) {
  Box b;
  b.lo = Vec::Constant(n, -half);
  b.hi = Vec::Constant(n, half);
  b.lo(0) += center0;
  b.hi(0) += center0;
  return b;
}

Form zero_one_form(int n) { return Form(n, 1); }

Spinor pinned_invariant_spinor(const CliffordRep& rep, const SubalgebraBasis& b) {
  const Eigen::MatrixXcd kernel = invariant_spinors(rep, b.g_basis);
  if (kernel.cols() == 0) throw std::runtime_error("model group has no invariant spinor");
  return kernel.col(0);
}

/// Conformal family: g = e^{2f} delta, frame e_a = e^{-f} d_a, Gamma = -df.
ChartModel conformal_model(const std::string& name, int n, GroupId gid, double amp,
                           const FormQ* invariant, int inv_degree, bool with_spinor,
                           bool with_torsion, const DerivPolicy& pol) {
  ChartModel model;
  model.name = name;
  model.n = n;
  model.group = gid;
  auto f = [amp](const Vec& x) { return amp * (std::sin(x(0)) + std::cos(x(1))); };
  auto df = [amp, n](const Vec& x) {
    Vec d = Vec::Zero(n);
    d(0) = amp * std::cos(x(0));
    d(1) = -amp * std::sin(x(1));
    return d;
  };
  model.metric.n = n;
  model.metric.box = centered_box(n, 0.5);
  model.metric.deriv = pol;
  model.metric.g = [n, f](const Vec& x) { return (std::exp(2.0 * f(x)) * Mat::Identity(n, n)).eval(); };
  model.lee = [n, df](const Vec& x) {
    const Vec d = df(x);
    Form out(n, 1);
    for (int i = 0; i < n; ++i) out.add_term(Mask{1} << i, -d(i));
    return out;
  };
  if (invariant != nullptr) {
    const Form base = to_float(*invariant);
    const int k = inv_degree;
    model.invariant = [f, k, base](const Vec& x) { return std::exp(k * f(x)) * base; };
    model.invariant_degree = k;
  }
  const SubalgebraBasis b = subalgebra(gid, n);
  if (with_spinor) {
    const CliffordRep rep(n);
    const Spinor psi0 = pinned_invariant_spinor(rep, b);
    model.spinor = [psi0](const Vec&) { return psi0; };
  }
  if (with_torsion) {
    const std::vector<Form> tmap = torsion_basis_map(b);
    model.torsion3 = [n, f, df, tmap](const Vec& x) {
      const Vec d = df(x);
      const double ef = std::exp(-f(x));
      Form acc(n, 3);
      for (int a = 0; a < n; ++a) {
        const double gfr = -ef * d(a);  // frame components of Gamma = -df
        if (gfr != 0.0) acc += gfr * tmap[a];
      }
      return std::exp(3.0 * f(x)) * acc;
    };
  }
  return model;
}

Mat standard_j(int n) {
  Mat j = Mat::Zero(n, n);
  for (int k = 0; k + 1 < n; k += 2) {
    j(k + 1, k) = 1.0;
    j(k, k + 1) = -1.0;
  }
  return j;
}

/// Hopf family: g = |x|^{-2} delta away from the origin, standard J,
/// Gamma = d log|x| (the conformal rule with f = -log|x|).
ChartModel hopf_model(const std::string& name, int n, const DerivPolicy& pol) {
  ChartModel model;
  model.name = name;
  model.n = n;
  model.group = GroupId::U_n;
  model.metric.n = n;
  model.metric.box = centered_box(n, 0.35, 1.0);
  model.metric.deriv = pol;
  model.metric.g = [n](const Vec& x) {
    return (Mat::Identity(n, n) / x.squaredNorm()).eval();
  };
  model.lee = [n](const Vec& x) {
    Form out(n, 1);
    const double r2 = x.squaredNorm();
    for (int i = 0; i < n; ++i) out.add_term(Mask{1} << i, x(i) / r2);
    return out;
  };
  const Form omega0 = to_float(kaehler_form(n / 2));
  model.invariant = [omega0](const Vec& x) { return (1.0 / x.squaredNorm()) * omega0; };
  model.invariant_degree = 2;
  model.jmap = [j = standard_j(n)](const Vec&) { return j; };
  const SubalgebraBasis b = subalgebra(GroupId::U_n, n);
  const std::vector<Form> tmap = torsion_basis_map(b);
  model.torsion3 = [n, tmap](const Vec& x) {
    const double r = x.norm();
    Form acc(n, 3);
    for (int a = 0; a < n; ++a) {
      const double gfr = x(a) / r;  // unit-length Lee form in the frame
      if (gfr != 0.0) acc += gfr * tmap[a];
    }
    return (1.0 / (r * r * r)) * acc;
  };
  return model;
}

/// Warped product g = dt^2 + e^{2h(t)} delta_{n-1}, t = x_1, Omega = dt.
ChartModel warped_model(const std::string& name, int n, std::function<double(double)> h,
                        std::function<double(double)> hprime, const Form& gamma,
                        const DerivPolicy& pol, bool gamma_from_h) {
  ChartModel model;
  model.name = name;
  model.n = n;
  model.group = GroupId::SO_nm1;
  model.metric.n = n;
  model.metric.box = centered_box(n, 0.5);
  model.metric.deriv = pol;
  model.metric.g = [n, h](const Vec& x) {
    Mat g = Mat::Identity(n, n);
    const double w = std::exp(2.0 * h(x(0)));
    for (int i = 1; i < n; ++i) g(i, i) = w;
    return g;
  };
  if (gamma_from_h) {
    model.lee = [n, hprime](const Vec& x) {
      Form out(n, 1);
      out.add_term(Mask{1}, -hprime(x(0)));
      return out;
    };
  } else {
    model.lee = [gamma](const Vec&) { return gamma; };
  }
  Form dt(n, 1);
  dt.add_term(Mask{1}, 1.0);
  model.invariant = [dt](const Vec&) { return dt; };
  model.invariant_degree = 1;
  return model;
}

}  // namespace

ChartModel make_model(const std::string& name, std::map<std::string, double> params,
                      const DerivPolicy& pol) {
  if (name == "flat") {
    const int n = static_cast<int>(take(params, "n", 4));
    expect_empty(params, name);
    ChartModel model;
    model.name = name;
    model.n = n;
    model.metric.n = n;
    model.metric.box = centered_box(n, 0.5);
    model.metric.deriv = pol;
    model.metric.g = [n](const Vec&) { return Mat::Identity(n, n).eval(); };
    model.lee = [n](const Vec&) { return zero_one_form(n); };
    return model;
  }
  if (name == "conformal_g2") {
    const double amp = take(params, "amp", 0.05);
    expect_empty(params, name);
    const FormQ phi = g2_three_form();
    return conformal_model(name, 7, GroupId::G2, amp, &phi, 3, true, true, pol);
  }
  if (name == "conformal_su2") {
    const double amp = take(params, "amp", 0.05);
    expect_empty(params, name);
    return conformal_model(name, 4, GroupId::SU2_4, amp, nullptr, 0, true, false, pol);
  }
  if (name == "conformal_spin7") {
    const double amp = take(params, "amp", 0.05);
    expect_empty(params, name);
    const FormQ cayley = cayley_four_form();
    return conformal_model(name, 8, GroupId::SPIN7, amp, &cayley, 4, true, true, pol);
  }
  if (name == "hopf_surface") {
    expect_empty(params, name);
    return hopf_model(name, 4, pol);
  }
  if (name == "hopf6") {
    expect_empty(params, name);
    return hopf_model(name, 6, pol);
  }
  if (name == "foliation") {
    const int n = static_cast<int>(take(params, "n", 4));
    const double c = take(params, "c", 0.2);
    const bool sinwarp = take(params, "sin", 0) != 0.0;
    expect_empty(params, name);
    std::function<double(double)> h, hp;
    if (sinwarp) {
      h = [](double t) { return std::sin(t); };
      hp = [](double t) { return std::cos(t); };
    } else {
      h = [c](double t) { return c * t; };
      hp = [c](double) { return c; };
    }
    ChartModel model = warped_model(name, n, h, hp, Form(n, 1), pol, true);
    model.params = {{"n", double(n)}, {"c", c}, {"sin", sinwarp ? 1.0 : 0.0}};
    return model;
  }
  if (name == "vec_parallel") {
    const int n = static_cast<int>(take(params, "n", 4));
    const double c = take(params, "c", 0.3);
    const double s = take(params, "s", -0.3);
    expect_empty(params, name);
    Form gamma(n, 1);
    gamma.add_term(Mask{1}, s);
    ChartModel model = warped_model(
        name, n, [c](double t) { return c * t; }, [c](double) { return c; }, gamma, pol, false);
    model.params = {{"n", double(n)}, {"c", c}, {"s", s}};
    return model;
  }
  if (name == "radial_flat") {
    const int n = static_cast<int>(take(params, "n", 4));
    expect_empty(params, name);
    ChartModel model;
    model.name = name;
    model.n = n;
    model.metric.n = n;
    model.metric.box = centered_box(n, 0.35, 1.0);
    model.metric.deriv = pol;
    model.metric.g = [n](const Vec&) { return Mat::Identity(n, n).eval(); };
    model.lee = [n](const Vec& x) {
      Form out(n, 1);
      const double r2 = x.squaredNorm();
      for (int i = 0; i < n; ++i) out.add_term(Mask{1} << i, -x(i) / r2);
      return out;
    };
    return model;
  }
  if (name == "generic") {
    const int n = static_cast<int>(take(params, "n", 4));
    expect_empty(params, name);
    if (n < 3) throw std::invalid_argument("make_model: generic model needs n >= 3");
    ChartModel model;
    model.name = name;
    model.n = n;
    model.metric.n = n;
    model.metric.box = centered_box(n, 0.5);
    model.metric.deriv = pol;
    model.metric.g = [n](const Vec& x) {
      Mat g = Mat::Identity(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          g(i, j) += 0.05 * (std::sin(x(i) + 2.0 * x(j)) + std::sin(x(j) + 2.0 * x(i)));
      return g;
    };
    model.lee = [n](const Vec& x) {
      Form out(n, 1);
      out.add_term(Mask{1}, 0.2 * std::sin(x(1)));
      out.add_term(Mask{1} << 2, 0.1 * x(0));
      return out;
    };
    return model;
  }
  throw std::invalid_argument("make_model: unknown model '" + name + "'");
}

}  // namespace vtlab
