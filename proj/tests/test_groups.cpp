#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "vtlab/serialize.hpp"

using namespace vtlab;

namespace {

std::vector<int> mults(const std::vector<CasimirBlock>& blocks) {
  std::vector<int> m;
  for (const auto& b : blocks) m.push_back(b.multiplicity);
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

TEST_CASE("catalog dimensions") {
  CHECK(subalgebra(GroupId::U_n, 4).dim_g() == 4);
  CHECK(subalgebra(GroupId::U_n, 6).dim_g() == 9);
  CHECK(subalgebra(GroupId::G2, 7).dim_g() == 14);
  CHECK(subalgebra(GroupId::SPIN7, 8).dim_g() == 21);
  CHECK(subalgebra(GroupId::SO3_IRRED5, 5).dim_g() == 3);
  CHECK(subalgebra(GroupId::SPIN9, 16).dim_g() == 36);
  const SubalgebraBasis so4in5 = subalgebra(GroupId::SO_nm1, 5);
  CHECK(so4in5.dim_g() == 6);
  CHECK(so4in5.dim_m() == 4);
  CHECK_THROWS_AS(subalgebra(GroupId::G2, 8), std::invalid_argument);
  CHECK_THROWS_AS(subalgebra(GroupId::SPIN9, 9), std::invalid_argument);
  CHECK_THROWS_AS(subalgebra(GroupId::U_n, 5), std::invalid_argument);
}

TEST_CASE("every catalog group is orthonormal, bracket closed, and projects cleanly") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (const auto& [id, n] :
       std::vector<std::pair<GroupId, int>>{{GroupId::U_n, 4},
                                            {GroupId::U_n, 6},
                                            {GroupId::G2, 7},
                                            {GroupId::SPIN7, 8},
                                            {GroupId::SO3_IRRED5, 5},
                                            {GroupId::SPIN9, 16},
                                            {GroupId::SO_nm1, 6},
                                            {GroupId::SU2_4, 4}}) {
    const SubalgebraBasis b = subalgebra(id, n);
    CHECK(b.dim_g() + b.dim_m() == n * (n - 1) / 2);
    CHECK(bracket_closure_residual(b) < 1e-10);
    for (size_t i = 0; i < b.g_basis.size(); ++i)
      for (size_t j = i; j < b.g_basis.size(); ++j)
        CHECK(std::abs(inner(b.g_basis[i], b.g_basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
    for (const Form& g : b.g_basis)
      for (const Form& m : b.m_basis) CHECK(std::abs(inner(g, m)) < 1e-10);
    Form w(n, 2);
    for (Mask m : mask::monomials(n, 2)) w.add_term(m, unif(rng));
    const Form pg = project_g(w, b);
    const Form pm = project_m(w, b);
    CHECK(std::sqrt(norm2(pg + pm - w)) < 1e-10);
    CHECK(std::sqrt(norm2(project_g(pg, b) - pg)) < 1e-10);
    CHECK(std::abs(inner(pg, pm)) < 1e-10);
  }
}

TEST_CASE("exact projectors agree with the orthonormal ones") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (const auto& [id, n] : std::vector<std::pair<GroupId, int>>{
           {GroupId::G2, 7}, {GroupId::U_n, 4}, {GroupId::SPIN9, 16}}) {
    const SubalgebraBasis b = subalgebra(id, n);
    REQUIRE(b.rational);
    FormQ wq(n, 2);
    for (Mask m : mask::monomials(n, 2)) wq.add_term(m, Rational(coeff(rng)));
    const FormQ pgq = project_g_exact(wq, b);
    const FormQ pmq = project_m_exact(wq, b);
    CHECK((pgq + pmq) == wq);
    CHECK(std::sqrt(norm2(to_float(pgq) - project_g(to_float(wq), b))) < 1e-10);
    // exact projector is idempotent
    CHECK(project_g_exact(pgq, b) == pgq);
  }
}

TEST_CASE("stored invariant forms are annihilated by rho_star") {
  for (const auto& [id, n, k] : std::vector<std::tuple<GroupId, int, int>>{
           {GroupId::U_n, 4, 2}, {GroupId::G2, 7, 3}, {GroupId::SPIN7, 8, 4}}) {
    const SubalgebraBasis b = subalgebra(id, n);
    const InvariantForms inv = invariant_forms(b, k);
    CHECK(!inv.basis.empty());
    for (const Form& omega : inv.basis)
      for (const Form& g : b.g_basis) CHECK(std::sqrt(norm2(rho_star(g, omega))) < 1e-10);
  }
}

TEST_CASE("invariant form dimensions") {
  CHECK(invariant_forms(subalgebra(GroupId::U_n, 4), 2).basis.size() == 1);
  const SubalgebraBasis so3 = subalgebra(GroupId::SO3_IRRED5, 5);
  for (int k = 1; k <= 4; ++k) CHECK(invariant_forms(so3, k).basis.empty());
  const InvariantForms g2inv = invariant_forms(subalgebra(GroupId::G2, 7), 3);
  REQUIRE(g2inv.basis.size() == 1);
  const Form phi = to_float(g2_three_form());
  CHECK(std::abs(std::abs(inner(g2inv.basis[0], phi)) - std::sqrt(norm2(phi))) < 1e-10);
  // spin(7) fixes the Cayley form in degree 4
  const InvariantForms s7inv = invariant_forms(subalgebra(GroupId::SPIN7, 8), 4);
  CHECK(s7inv.basis.size() == 1);
  // degree-0 forms are always invariant
  CHECK(invariant_forms(so3, 0).basis.size() == 1);
}

TEST_CASE("spin(9) cost guard reports not_computed beyond degree 4") {
  const SubalgebraBasis s9 = subalgebra(GroupId::SPIN9, 16);
  const InvariantForms guarded = invariant_forms(s9, 8);
  CHECK(guarded.status == InvariantForms::Status::not_computed);
  CHECK(guarded.basis.empty());
  const InvariantForms low = invariant_forms(s9, 2);
  CHECK(low.status == InvariantForms::Status::computed);
  CHECK(low.basis.empty());
}

TEST_CASE("casimir splits and their stability under re-basis") {
  const SubalgebraBasis so3 = subalgebra(GroupId::SO3_IRRED5, 5);
  CHECK(mults(casimir_split_forms(so3, 3)) == std::vector<int>{3, 7});
  CHECK(mults(casimir_split_rn_m(so3)) == std::vector<int>{3, 5, 7, 9, 11});
  const SubalgebraBasis g2 = subalgebra(GroupId::G2, 7);
  CHECK(mults(casimir_split_forms(g2, 2)) == std::vector<int>{7, 14});
  const SubalgebraBasis full = subalgebra(GroupId::SO_FULL, 5);
  const auto single = casimir_split_forms(full, 2);
  CHECK(single.size() == 1);
  CHECK(single[0].multiplicity == 10);

  // random orthonormal re-basis of g leaves the splitting unchanged
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  SubalgebraBasis rotated = so3;
  Eigen::MatrixXd q(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q(i, j) = unif(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  const Eigen::MatrixXd orth = qr.householderQ();
  std::vector<Form> rg(3, Form(5, 2));
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) rg[j] += orth(i, j) * so3.g_basis[i];
  rotated.g_basis = rg;
  CHECK(mults(casimir_split_forms(rotated, 3)) == std::vector<int>{3, 7});

  // cost guard
  CHECK_THROWS_AS(casimir_split_forms(subalgebra(GroupId::SPIN9, 16), 5), std::invalid_argument);
}

TEST_CASE("wedge multiplication injectivity (exact ranks)") {
  const WedgeInjectivity g2w = wedge_multiplication_injective_exact(g2_three_form());
  CHECK(g2w.injective);
  CHECK(g2w.rank == 21);
  CHECK(g2w.exact);
  const WedgeInjectivity s7w = wedge_multiplication_injective_exact(cayley_four_form());
  CHECK(s7w.injective);
  CHECK(s7w.rank == 28);
  const WedgeInjectivity k2 = wedge_multiplication_injective_exact(kaehler_form(2));
  CHECK_FALSE(k2.injective);
  CHECK(k2.kernel_dim == 5);
  CHECK(wedge_multiplication_injective_exact(kaehler_form(3)).injective);
  // float route agrees
  CHECK(wedge_multiplication_injective(to_float(kaehler_form(3))).injective);
  CHECK_THROWS_AS(wedge_multiplication_injective_exact(FormQ::monomial(4, {1, 2, 3})),
                  std::invalid_argument);
}

TEST_CASE("custom subalgebras and the full so(n)") {
  const SubalgebraBasis full = subalgebra(GroupId::SO_FULL, 5);
  CHECK(full.dim_g() == 10);
  CHECK(full.dim_m() == 0);
  const SubalgebraBasis custom = custom_subalgebra(4, {to_float(FormQ::monomial(4, {1, 2}))});
  CHECK(custom.dim_g() == 1);
  CHECK(custom.dim_m() == 5);
  CHECK_THROWS_AS(subalgebra(GroupId::CUSTOM, 4), std::invalid_argument);
}

TEST_CASE("gstructure cache round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "vtlab_cache_test";
  fs::remove_all(dir);
  const GStructureSpec fresh = build_gstructure(GroupId::G2, 7, {3});
  const GStructureSpec first = load_or_build_gstructure(GroupId::G2, 7, {3}, dir.string());
  CHECK_FALSE(first.from_cache);
  const GStructureSpec second = load_or_build_gstructure(GroupId::G2, 7, {3}, dir.string());
  CHECK(second.from_cache);
  CHECK(gstructure_to_json(second) == gstructure_to_json(fresh));
  CHECK(second.theta_report.has_value());
  CHECK(second.invariant_spinor.has_value());
  REQUIRE(second.invariant_forms_by_degree.count(3) == 1);
  CHECK(second.invariant_forms_by_degree.at(3).size() == 1);
  fs::remove_all(dir);
}
