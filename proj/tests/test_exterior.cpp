#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vtlab/form.hpp"
#include "vtlab/linmap.hpp"
#include "vtlab/serialize.hpp"
#include "vtlab/torsion.hpp"

using namespace vtlab;

namespace {

FormQ random_qform(int n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  FormQ f(n, k);
  for (Mask m : mask::monomials(n, k)) f.add_term(m, Rational(num(rng), den(rng)));
  return f;
}

double qnorm(const FormQ& f) { return std::sqrt(to_double(norm2(f))); }

}  // namespace

TEST_CASE("wedge unit examples") {
  const FormQ e1 = FormQ::monomial(4, {1});
  const FormQ e2 = FormQ::monomial(4, {2});
  CHECK(wedge(e1, e2) == FormQ::monomial(4, {1, 2}));
  CHECK(wedge(e1, e1).is_zero());
  CHECK(wedge(FormQ::monomial(4, {1, 2}), FormQ::monomial(4, {3, 4})) ==
        wedge(FormQ::monomial(4, {3, 4}), FormQ::monomial(4, {1, 2})));
  CHECK(FormQ::monomial(4, {2, 1}) == -FormQ::monomial(4, {1, 2}));
}

TEST_CASE("wedge error paths") {
  CHECK_THROWS_AS(wedge(FormQ::monomial(3, {1, 2}), FormQ::monomial(3, {2, 3})),
                  std::invalid_argument);
  CHECK_THROWS_AS(wedge(FormQ::monomial(3, {1}), FormQ::monomial(4, {1})), std::invalid_argument);
}

TEST_CASE("interior unit examples and error paths") {
  CHECK(interior(FormQ::monomial(4, {1}), FormQ::monomial(4, {1, 2})) == FormQ::monomial(4, {2}));
  CHECK(interior(FormQ::monomial(4, {3}), FormQ::monomial(4, {1, 2})).is_zero());
  CHECK_THROWS_AS(interior(FormQ::monomial(4, {1}), FormQ::scalar(4, Rational(2))),
                  std::invalid_argument);
}

TEST_CASE("interior is an antiderivation on random rational inputs") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 8; ++n) {
    if (n < 2) continue;
    for (int rep = 0; rep < 4; ++rep) {
      const FormQ v = random_qform(n, 1, rng);
      const int ka = std::min(2, n - 1);
      const int kb = std::min(1, n - ka);
      const FormQ a = random_qform(n, ka, rng);
      const FormQ b = random_qform(n, kb, rng);
      if (ka + kb > n) continue;
      FormQ rhs = wedge(interior(v, a), b);
      if (kb >= 1) {
        const Rational sign = (ka % 2 == 0) ? Rational(1) : Rational(-1);
        rhs += sign * wedge(a, interior(v, b));
      }
      CHECK(interior(v, wedge(a, b)) == rhs);
    }
  }
}

TEST_CASE("wedge and interior are adjoint") {
  std::mt19937_64 rng(8);
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k < std::min(n, 4); ++k) {
      const FormQ v = random_qform(n, 1, rng);
      const FormQ a = random_qform(n, k, rng);
      const FormQ b = random_qform(n, k + 1, rng);
      CHECK(inner(wedge(v, a), b) == inner(a, interior(v, b)));
    }
}

TEST_CASE("hodge star unit examples and double star") {
  CHECK(hodge(FormQ::monomial(4, {1, 2})) == FormQ::monomial(4, {3, 4}));
  CHECK(hodge(hodge(FormQ::monomial(4, {1}))) == -FormQ::monomial(4, {1}));
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k <= n; ++k)
      for (Mask m : mask::monomials(n, k)) {
        FormQ f(n, k);
        f.add_term(m, Rational(1));
        const Rational sign = ((k * (n - k)) % 2 == 0) ? Rational(1) : Rational(-1);
        CHECK(hodge(hodge(f)) == sign * f);
      }
}

TEST_CASE("hodge of Gamma wedge phi matches the torsion solver oracle") {
  const SubalgebraBasis g2 = subalgebra(GroupId::G2, 7);
  const Form e7 = Form::monomial(7, {7});
  const CharTorsion ct = characteristic_torsion(e7, g2);
  REQUIRE(ct.status == CharTorsion::Status::solved);
  const Form starred = hodge(wedge(e7, to_float(g2_three_form())));
  CHECK(std::sqrt(norm2(starred + ct.torsion)) < 1e-12);
}

TEST_CASE("inner products and the G2 norms") {
  CHECK(inner(FormQ::monomial(4, {1, 2}), FormQ::monomial(4, {1, 2})) == Rational(1));
  CHECK(norm2(g2_three_form()) == Rational(7));
  // Gamma -| T^c = 0 and |T^c|^2 = 4 |Gamma|^2 on the G2 model data
  const SubalgebraBasis g2 = subalgebra(GroupId::G2, 7);
  const Form e7 = Form::monomial(7, {7});
  const CharTorsion ct = characteristic_torsion(e7, g2);
  REQUIRE(ct.status == CharTorsion::Status::solved);
  CHECK(norm2(interior(e7, ct.torsion)) < 1e-24);
  CHECK(norm2(ct.torsion) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("two-form / matrix identification") {
  const Form w = to_float(FormQ::monomial(4, {1, 2}));
  const Eigen::MatrixXd m = two_form_to_matrix(w);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4), e3 = Eigen::VectorXd::Zero(4);
  e1(0) = 1;
  e3(2) = 1;
  CHECK((m * e1)(1) == doctest::Approx(1.0));  // e1 -> e2
  CHECK((m * e3).norm() == doctest::Approx(0.0));
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    const FormQ w5 = random_qform(5, 2, rng);
    CHECK(qmat_to_two_form(two_form_to_qmat(w5)) == w5);
  }
}

TEST_CASE("exact and float backends agree on integer inputs") {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int n = 2; n <= 6; ++n) {
    FormQ aq(n, 1), bq(n, std::min(2, n - 1));
    for (Mask m : mask::monomials(n, 1)) aq.add_term(m, Rational(coeff(rng)));
    for (Mask m : mask::monomials(n, bq.degree())) bq.add_term(m, Rational(coeff(rng)));
    const Form af = to_float(aq), bf = to_float(bq);
    CHECK(std::sqrt(norm2(to_float(wedge(aq, bq)) - wedge(af, bf))) < 1e-12);
    CHECK(std::sqrt(norm2(to_float(interior(aq, bq)) - interior(af, bf))) < 1e-12);
    CHECK(std::sqrt(norm2(to_float(hodge(bq)) - hodge(bf))) < 1e-12);
    CHECK(std::abs(to_double(inner(bq, bq)) - inner(bf, bf)) < 1e-12);
  }
}

TEST_CASE("graded commutativity on random rational inputs") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 8; ++n)
    for (int ka = 1; ka <= 3; ++ka)
      for (int kb = 1; ka + kb <= n && kb <= 3; ++kb) {
        const FormQ a = random_qform(n, ka, rng);
        const FormQ b = random_qform(n, kb, rng);
        const Rational sign = ((ka * kb) % 2 == 0) ? Rational(1) : Rational(-1);
        CHECK(qnorm(wedge(a, b) - sign * wedge(b, a)) == 0.0);
      }
}

TEST_CASE("rho_star matches the matrix action in degree 1 and the bracket in degree 2") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int n : {4, 5, 7}) {
    Form w(n, 2), eta(n, 2), x(n, 1);
    for (Mask m : mask::monomials(n, 2)) {
      w.add_term(m, unif(rng));
      eta.add_term(m, unif(rng));
    }
    for (Mask m : mask::monomials(n, 1)) x.add_term(m, unif(rng));
    const Eigen::VectorXd xv = two_form_to_matrix(w) * form_coords(x, mask::monomials(n, 1));
    CHECK((form_coords(rho_star(w, x), mask::monomials(n, 1)) - xv).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd bracket = two_form_to_matrix(w) * two_form_to_matrix(eta) -
                                    two_form_to_matrix(eta) * two_form_to_matrix(w);
    CHECK(std::sqrt(norm2(rho_star(w, eta) - matrix_to_two_form(bracket))) < 1e-12);
  }
}

TEST_CASE("form JSON serialization round trips and keeps canonical order") {
  std::mt19937_64 rng(13);
  const FormQ fq = random_qform(5, 2, rng);
  const Json jq = form_to_json(fq);
  CHECK(jq.at("backend") == "rational");
  CHECK(qform_from_json(jq) == fq);
  // canonical lexicographic order of the serialized entries
  std::vector<Mask> seen;
  for (const auto& e : jq.at("entries")) seen.push_back(mask::from_indices(e.at("idx").get<std::vector<int>>()));
  for (size_t i = 1; i < seen.size(); ++i) CHECK(mask::lex_less(seen[i - 1], seen[i]));

  const Form ff = to_float(fq);
  const Json jf = form_to_json(ff);
  CHECK(jf.at("backend") == "float");
  CHECK(std::sqrt(norm2(form_from_json(jf) - ff)) == 0.0);
}

TEST_CASE("pullback along the identity and a rotation") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Form a(4, 2);
  for (Mask m : mask::monomials(4, 2)) a.add_term(m, unif(rng));
  CHECK(std::sqrt(norm2(pullback(a, Eigen::MatrixXd::Identity(4, 4)) - a)) < 1e-14);
  // a rotation preserves the inner product of forms
  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(4, 4);
  const double c = std::cos(0.3), s = std::sin(0.3);
  rot(0, 0) = c;
  rot(0, 1) = -s;
  rot(1, 0) = s;
  rot(1, 1) = c;
  CHECK(norm2(pullback(a, rot)) == doctest::Approx(norm2(a)).epsilon(1e-12));
}
