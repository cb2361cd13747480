#include <doctest.h>

#include <random>

#include "gdkp/errors.hpp"
#include "gdkp/kurasov.hpp"
#include "gdkp/numeric.hpp"
#include "test_util.hpp"

using namespace gdkp;
using cd = std::complex<double>;

namespace {

const cd I(0, 1);

double dist(const Matrix2cd& a, const Matrix2cd& b) { return (a - b).cwiseAbs().maxCoeff(); }

Matrix2cd sigma_x() {
  Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

// Psi(0+) from Psi(0-) by solving the coupling condition
// (phi- - chi-, phi+ + chi+) = U (phi- + chi-, phi+ - chi+) for (phi+, chi+).
Vector2cd solve_junction(const Matrix2cd& u, const Vector2cd& left) {
  const cd p = left[0], c = left[1];
  // Unknown x = (phi+, chi+): row r reads
  //   e_r(p - c, x0 + x1) = sum_j U_rj (j == 0 ? p + c : x0 - x1).
  Matrix2cd a;
  Vector2cd rhs;
  for (int r = 0; r < 2; ++r) {
    const cd lhs_known = r == 0 ? p - c : 0.0;
    a(r, 0) = (r == 1 ? 1.0 : 0.0) - u(r, 1);
    a(r, 1) = (r == 1 ? 1.0 : 0.0) + u(r, 1);
    rhs[r] = u(r, 0) * (p + c) - lhs_known;
  }
  return a.fullPivLu().solve(rhs);
}

}  // namespace

TEST_CASE("coupling_to_strengths examples") {
  const Strengths free = coupling_to_strengths(make_coupling(pi / 2, {0, -1, 0, 0}));
  CHECK_FALSE(free.singular);
  CHECK(free.g.norm() < 1e-15);
  CHECK(coupling_to_strengths(make_coupling(pi / 2, {0, 1, 0, 0})).singular);
  CHECK(coupling_to_strengths(make_coupling(0, {0, 0, 0, 1})).singular);
}

TEST_CASE("strengths_to_coupling examples") {
  const Coupling a = strengths_to_coupling(Eigen::Vector4d::Zero());
  CHECK(same_coupling(a, make_coupling(pi / 2, {0, -1, 0, 0})));
  CHECK(a.eta == doctest::Approx(pi / 2));
  const Coupling b = strengths_to_coupling(Eigen::Vector4d(2, 0, 0, 0));
  CHECK(b.eta == 0.0);
  CHECK((b.m - Eigen::Vector4d(0, -1, 0, 0)).norm() < 1e-15);
  CHECK_THROWS_AS(strengths_to_coupling(Eigen::Vector4d(std::nan(""), 0, 0, 0)), Error);
}

TEST_CASE("round trip through strengths") {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 1000) {
    const Coupling c = testing::random_coupling(rng);
    const Strengths s = coupling_to_strengths(c);
    if (s.singular) continue;
    CHECK(same_coupling(strengths_to_coupling(s.g), c, 1e-9));
    ++checked;
  }
  // Branch (ii) and (iii) inputs built directly.
  for (double t : {-2.0, 0.1, 1.4}) {
    const Eigen::Vector4d g2(0.0, std::cos(t), std::sin(t), 0.5);
    const Strengths s2 = coupling_to_strengths(strengths_to_coupling(g2));
    CHECK((s2.g - g2).norm() < 1e-12);
    const Eigen::Vector4d g3(std::sqrt(4.0 + 1.0 + 0.25), std::cos(t), std::sin(t), 0.5);
    CHECK(std::abs(kurasov_delta(g3)) < 1e-12);
    const Strengths s3 = coupling_to_strengths(strengths_to_coupling(g3));
    CHECK((s3.g - g3).norm() < 1e-12);
  }
}

TEST_CASE("delta_matrix examples") {
  CHECK(dist(delta_matrix(Eigen::Vector4d(1, 0, 0, 0)), Matrix2cd::Identity()) == 0.0);
  Matrix2cd sz;
  sz << 1, 0, 0, -1;
  CHECK(dist(delta_matrix(Eigen::Vector4d(0, 0, 0, 1)), sz) == 0.0);
}

TEST_CASE("Cayley relation between V_g(U) and U") {
  std::mt19937_64 rng(5);
  const double r = 1.0 / std::sqrt(2.0);
  Matrix2cd lam;
  lam << r, r, r, -r;
  int checked = 0;
  while (checked < 200) {
    const Coupling c = testing::random_coupling(rng);
    const Strengths s = coupling_to_strengths(c);
    if (s.singular || s.g.norm() > 1e3) continue;
    const Matrix2cd ut = -sigma_x() * coupling_matrix(c);
    const Matrix2cd id = Matrix2cd::Identity();
    const Matrix2cd lhs = -0.5 * lam * delta_matrix(s.g) * lam;
    const Matrix2cd rhs = I * (id + ut) * (id - ut).inverse();
    CHECK(dist(lhs, rhs) < 1e-9 * (1.0 + s.g.norm()));
    CHECK(dist(cayley(inverse_cayley(ut)), ut) < 1e-9);
    ++checked;
  }
}

TEST_CASE("interaction matrix examples") {
  CHECK(dist(interaction_matrix(make_coupling(pi / 2, {0, -1, 0, 0})), Matrix2cd::Identity()) < 1e-15);
  CHECK(dist(interaction_matrix(family_BDI(pi / 2)), -Matrix2cd::Identity()) < 1e-15);
  CHECK_THROWS_AS(interaction_matrix(family_D(0)), Error);
}

TEST_CASE("interaction matrix solves the coupling condition") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Coupling c = testing::random_permeable(rng);
    const Matrix2cd d = interaction_matrix(c);
    const Matrix2cd u = coupling_matrix(c);
    const Vector2cd left(cd(n(rng), n(rng)), cd(n(rng), n(rng)));
    const Vector2cd expect = solve_junction(u, left);
    CHECK((d * left - expect).norm() < 1e-9 * (1.0 + expect.norm()));
    const cd det_expect = cd(c.m1(), c.m2()) / cd(c.m1(), -c.m2());
    CHECK(std::abs(d.determinant() - det_expect) < 1e-10);
  }
}
