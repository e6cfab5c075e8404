#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vtlab/torsion.hpp"

using namespace vtlab;

namespace {

Form random_form(int n, int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Form f(n, k);
  for (Mask m : mask::monomials(n, k)) f.add_term(m, unif(rng));
  return f;
}

}  // namespace

TEST_CASE("theta: zero input, zero group, linearity, membership") {
  const SubalgebraBasis g2 = subalgebra(GroupId::G2, 7);
  CHECK(theta(Form(7, 3), g2).norm() == 0.0);
  const SubalgebraBasis full = subalgebra(GroupId::SO_FULL, 7);
  std::mt19937_64 rng(41);
  CHECK(theta(random_form(7, 3, rng), full).norm() == 0.0);
  const Form t1 = random_form(7, 3, rng);
  const Form t2 = random_form(7, 3, rng);
  const auto lin = theta(2.0 * t1 - 0.5 * t2, g2);
  const auto a = theta(t1, g2);
  const auto b = theta(t2, g2);
  for (int i = 0; i < 7; ++i)
    CHECK(std::sqrt(norm2(lin.components[i] - 2.0 * a.components[i] + 0.5 * b.components[i])) <
          1e-12);
  CHECK(theta(to_float(g2_three_form()), g2).in_m(g2));
  CHECK(theta(to_float(g2_three_form()), g2).norm() > 0.1);
}

TEST_CASE("theta1: zero and injectivity on the catalog") {
  const SubalgebraBasis u2 = subalgebra(GroupId::U_n, 4);
  CHECK(theta1(Form(4, 1), u2).norm() == 0.0);
  for (const auto& [id, n] :
       std::vector<std::pair<GroupId, int>>{{GroupId::U_n, 4},
                                            {GroupId::G2, 7},
                                            {GroupId::SPIN7, 8},
                                            {GroupId::SO3_IRRED5, 5},
                                            {GroupId::SO_nm1, 5}}) {
    const SubalgebraBasis b = subalgebra(id, n);
    CHECK(theta1(Form::monomial(n, {1}), b).norm() > 1e-8);
    const ThetaReport rep = analyze_theta(b);
    CHECK(rep.theta1_injective);
  }
  // components match the projection slot by slot
  const Form e1 = Form::monomial(4, {1});
  const auto el = theta1(e1, u2);
  for (int i = 1; i <= 4; ++i) {
    const Form direct = project_m(wedge(Form::monomial(4, {i}), e1), u2);
    CHECK(std::sqrt(norm2(el.components[i - 1] - direct)) < 1e-13);
  }
}

TEST_CASE("theta report trichotomy") {
  const ThetaReport g2 = analyze_theta(subalgebra(GroupId::G2, 7));
  CHECK(g2.rank_theta == 35);
  CHECK(g2.theta_injective);
  CHECK(g2.image_meets_theta1 == ImageRelation::contained);
  CHECK(g2.char_connection_for_vectorial);
  CHECK(g2.arithmetic == "exact-rational");

  const ThetaReport so3 = analyze_theta(subalgebra(GroupId::SO3_IRRED5, 5));
  CHECK(so3.rank_theta == 10);
  CHECK(so3.rank_stacked == 15);
  CHECK(so3.image_meets_theta1 == ImageRelation::complementary);
  CHECK_FALSE(so3.char_connection_for_vectorial);

  const ThetaReport u2 = analyze_theta(subalgebra(GroupId::U_n, 4));
  CHECK(u2.image_meets_theta1 == ImageRelation::contained);

  const ThetaReport full = analyze_theta(subalgebra(GroupId::SO_FULL, 5));
  CHECK(full.rank_theta == 0);
  CHECK(full.char_connection_for_vectorial);
}

TEST_CASE("theta report ranks are stable under re-basis of m") {
  SubalgebraBasis so3 = subalgebra(GroupId::SO3_IRRED5, 5);
  const ThetaReport before = analyze_theta(so3);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int dm = so3.dim_m();
  Eigen::MatrixXd q(dm, dm);
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j) q(i, j) = unif(rng);
  const Eigen::MatrixXd orth = Eigen::HouseholderQR<Eigen::MatrixXd>(q).householderQ();
  std::vector<Form> rotated(dm, Form(5, 2));
  for (int j = 0; j < dm; ++j)
    for (int i = 0; i < dm; ++i) rotated[j] += orth(i, j) * so3.m_basis[i];
  so3.m_basis = rotated;
  const ThetaReport after = analyze_theta(so3);
  CHECK(after.rank_theta == before.rank_theta);
  CHECK(after.rank_theta1 == before.rank_theta1);
  CHECK(after.rank_stacked == before.rank_stacked);
  CHECK(after.image_meets_theta1 == before.image_meets_theta1);
}

TEST_CASE("characteristic torsion anchors") {
  const SubalgebraBasis g2 = subalgebra(GroupId::G2, 7);
  const Form e7 = Form::monomial(7, {7});
  const CharTorsion ct = characteristic_torsion(e7, g2);
  REQUIRE(ct.status == CharTorsion::Status::solved);
  CHECK(ct.unique);
  CHECK(ct.membership_residual < 1e-12);
  const Form expect = -1.0 * hodge(wedge(e7, to_float(g2_three_form())));
  CHECK(std::sqrt(norm2(ct.torsion - expect)) < 1e-12);

  const auto exact = characteristic_torsion_exact(FormQ::monomial(7, {7}), g2);
  REQUIRE(exact.has_value());
  REQUIRE(exact->solvable);
  CHECK(exact->unique);
  const FormQ expectq = FormQ(7, 3) - hodge(wedge(FormQ::monomial(7, {7}), g2_three_form()));
  CHECK(exact->torsion == expectq);

  // U(2): the membership condition forces * T^c = -2 Gamma
  const SubalgebraBasis u2 = subalgebra(GroupId::U_n, 4);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    const Form gamma = random_form(4, 1, rng);
    const CharTorsion cu = characteristic_torsion(gamma, u2);
    REQUIRE(cu.status == CharTorsion::Status::solved);
    CHECK(cu.membership_residual < 1e-12);
    CHECK(std::sqrt(norm2(hodge(cu.torsion) + 2.0 * gamma)) < 1e-12);
    CHECK(norm2(cu.torsion) == doctest::Approx(4.0 * norm2(gamma)).epsilon(1e-10));
  }

  // the membership condition holds for every returned solution
  const SubalgebraBasis s7 = subalgebra(GroupId::SPIN7, 8);
  const CharTorsion cs = characteristic_torsion(random_form(8, 1, rng), s7);
  REQUIRE(cs.status == CharTorsion::Status::solved);
  CHECK(cs.membership_residual < 1e-11);
}

TEST_CASE("obstructed groups report no-solution") {
  const SubalgebraBasis so3 = subalgebra(GroupId::SO3_IRRED5, 5);
  const CharTorsion ct = characteristic_torsion(Form::monomial(5, {1}), so3);
  CHECK(ct.status == CharTorsion::Status::no_solution);
  CHECK(ct.residual_rel > 1e-3);
  // exact route: no rational structure for this group
  CHECK_FALSE(characteristic_torsion_exact(FormQ::monomial(5, {1}), so3).has_value());
  // zero right-hand side solves trivially
  const CharTorsion zero = characteristic_torsion(Form(5, 1), so3);
  CHECK(zero.status == CharTorsion::Status::solved);
  CHECK(std::sqrt(norm2(zero.torsion)) < 1e-12);
}

TEST_CASE("solver output is basis independent (pivoting stability)") {
  SubalgebraBasis g2 = subalgebra(GroupId::G2, 7);
  std::mt19937_64 rng(44);
  const Form gamma = random_form(7, 1, rng);
  const CharTorsion a = characteristic_torsion(gamma, g2);
  // reverse the m-basis: different column ordering inside the solve
  std::reverse(g2.m_basis.begin(), g2.m_basis.end());
  const CharTorsion b = characteristic_torsion(gamma, g2);
  REQUIRE(a.status == CharTorsion::Status::solved);
  REQUIRE(b.status == CharTorsion::Status::solved);
  CHECK(std::sqrt(norm2(a.torsion - b.torsion)) < 1e-9);
}

TEST_CASE("conformal shift") {
  const Form gamma = Form::monomial(4, {1});
  CHECK(conformal_shift(gamma, Form(4, 1)) == gamma);
  CHECK(conformal_shift(Form(4, 1), gamma) == gamma);
  CHECK_THROWS_AS(conformal_shift(gamma, Form::monomial(5, {1})), std::invalid_argument);
}
