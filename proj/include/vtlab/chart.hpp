#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "vtlab/clifford.hpp"
#include "vtlab/form.hpp"

namespace vtlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Central differences with one optional Richardson extrapolation level.
struct DerivPolicy {
  double h = 1e-4;
  bool richardson = true;
};

struct Box {
  Vec lo, hi;
  bool contains(const Vec& x, double margin) const;
};

/// Coordinate-chart Riemannian metric given as an evaluable matrix function.
struct ChartMetric {
  int n = 0;
  Box box;
  std::function<Mat(const Vec&)> g;
  DerivPolicy deriv;

  Mat eval(const Vec& x) const;            // checks symmetry and positivity
  void check_margin(const Vec& x) const;   // interior with margin >= 4h
};

using ScalarField = std::function<double(const Vec&)>;
using VectorFieldFn = std::function<Vec(const Vec&)>;     // contravariant components
using FormField = std::function<Form(const Vec&)>;        // coordinate components
using SpinorField = std::function<Spinor(const Vec&)>;    // orthonormal-frame components

struct ConnectionSpec {
  enum class Kind { levi_civita, vectorial, weyl, skew };
  Kind kind = Kind::levi_civita;
  FormField gamma;     // 1-form field (vectorial / weyl)
  FormField torsion3;  // totally skew torsion 3-form field (skew)

  static ConnectionSpec levi_civita() { return {}; }
  static ConnectionSpec vectorial(FormField g1) { return {Kind::vectorial, std::move(g1), nullptr}; }
  static ConnectionSpec weyl(FormField g1) { return {Kind::weyl, std::move(g1), nullptr}; }
  static ConnectionSpec skew(FormField t3) { return {Kind::skew, nullptr, std::move(t3)}; }
};

double fd_partial(const ScalarField& f, const Vec& x, int i, const DerivPolicy& p);
Vec fd_partial(const VectorFieldFn& f, const Vec& x, int i, const DerivPolicy& p);

/// Interior product of a coordinate vector into a coordinate form (no metric).
Form interior_vec(const Vec& v, const Form& a);

/// Signed coefficient lookup: indices may arrive unsorted; repeats give 0.
double form_coeff_signed(const Form& f, std::vector<int> idx1);

/// Christoffel symbols of the metric; chris[k](i,j) = Gamma^k_{ij}.
std::vector<Mat> christoffel(const ChartMetric& m, const Vec& x);

/// Coefficients A^k_{ij} of the requested connection (nabla_{d_i} d_j = A^k_{ij} d_k).
std::vector<Mat> connection_coeffs(const ChartMetric& m, const ConnectionSpec& spec, const Vec& x);

/// nabla_X Y for a constant coordinate direction X and a vector field Y.
Vec connection_nabla(const ChartMetric& m, const ConnectionSpec& spec, const Vec& X,
                     const VectorFieldFn& Y, const Vec& x);

/// Covariant derivative of a form field along the coordinate vector X.
Form covariant_deriv_form(const ChartMetric& m, const ConnectionSpec& spec, const FormField& F,
                          const Vec& X, const Vec& x);

/// Curvature R(d_i, d_j) d_k = R^l_{ijk} d_l of an arbitrary coefficient
/// connection, by finite differences of its coefficients.
struct CurvatureTensor {
  int n = 0;
  std::vector<Mat> comp;  // index i*n+j; entry (l,k) = R^l_{ijk}
  const Mat& operator()(int i, int j) const { return comp[static_cast<size_t>(i) * n + j]; }
};

CurvatureTensor curvature(const ChartMetric& m, const ConnectionSpec& spec, const Vec& x);
Mat ricci_from_curvature(const CurvatureTensor& r);  // Ric_{jk} = R^i_{ijk}
Mat ricci(const ChartMetric& m, const ConnectionSpec& spec, const Vec& x);
double scal(const ChartMetric& m, const ConnectionSpec& spec, const Vec& x);

/// Exterior derivative of a form field (metric-free, coordinate components).
Form dform(const FormField& F, int n, const Vec& x, const DerivPolicy& p);

/// Codifferential via the orthonormal-frame formula -sum_a e_a -| nabla_{e_a} F.
Form codifferential(const ChartMetric& m, const FormField& F, const Vec& x);
/// Cross-check route: +- * d * with the metric Hodge operator.
Form codifferential_hodge(const ChartMetric& m, const FormField& F, const Vec& x);

/// Deterministic orthonormal frame: Gram-Schmidt of the coordinate frame in
/// index order; columns are frame vectors in coordinate components.
Mat frame(const ChartMetric& m, const Vec& x);
Form to_frame(const Form& coord_form, const Mat& e);
Form to_coords(const Form& frame_form, const Mat& e);

/// Metric Hodge star on coordinate forms (orientation dx_1 ^ ... ^ dx_n).
Form hodge_g(const ChartMetric& m, const Form& coord_form, const Vec& x);
double form_inner_g(const ChartMetric& m, const Form& a, const Form& b, const Vec& x);

Vec sharp(const Mat& g_at_x, const Form& one_form);
Form flat_form(const Mat& g_at_x, const Vec& v);

/// Levi-Civita connection 1-form of the frame in direction X, as a 2-form in
/// frame indices: sum_{a<b} g(nabla_X e_a, e_b) e_a ^ e_b.
Form frame_connection_form(const ChartMetric& m, const Vec& X, const Vec& x);

/// Covariant spinor derivative in the deterministic frame. Supported kinds:
/// levi_civita, vectorial (adds -1/2 (X ^ Gamma) .), skew (adds 1/4 (X -| T) .).
Spinor spinor_nabla(const ChartMetric& m, const ConnectionSpec& spec, const CliffordRep& rep,
                    const SpinorField& psi, const Vec& X, const Vec& x);

}  // namespace vtlab
