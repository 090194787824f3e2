#include "support.hpp"

#include "hksym/lie_model.hpp"
#include "hksym/operators.hpp"

#include <doctest.h>

using namespace hksym;
using namespace hksym::test;

TEST_CASE("su(1,1) basic elements") {
  const AlgebraModel m(1, 1);
  CHECK(m.rank() == 1);
  CHECK(m.dim_m() == 2);
  CHECK(residual(m.upsilon(), mat2(0.5 * kI, 0, 0, -0.5 * kI)) < 1e-15);
  CHECK(residual(m.so().x[0], mat2(0, 1, 1, 0)) < 1e-15);
  CHECK(residual(m.so().y[0], mat2(0, kI, -kI, 0)) < 1e-15);
  CHECK(residual(m.project(Space::m_plus, m.so().x[0]), m.so().e[0]) < 1e-15);
  CHECK(residual(m.project(Space::k, m.upsilon()), m.upsilon()) < 1e-15);
}

TEST_CASE("su(2,1) Upsilon and ad_Upsilon on the off-diagonal blocks") {
  const AlgebraModel m(2, 1);
  CHECK(m.rank() == 1);
  Mat u = Mat::Zero(3, 3);
  u(0, 0) = kI / 3.0;
  u(1, 1) = kI / 3.0;
  u(2, 2) = -2.0 * kI / 3.0;
  CHECK(residual(m.upsilon(), u) < 1e-15);
  Rng rng(3);
  const Mat w = random_m(m, rng, 1.0);
  const Mat wp = m.project(Space::m_plus, w), wm = m.project(Space::m_minus, w);
  CHECK(residual(bracket(u, wp), Mat(kI * wp)) < 1e-14);
  CHECK(residual(bracket(u, wm), Mat(-kI * wm)) < 1e-14);
}

TEST_CASE("Killing form against the trace of ad ad") {
  for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    const AlgebraModel m(p, q);
    Rng rng(11);
    for (int i = 0; i < 5; ++i) {
      const Mat x = random_g_alg(m, rng, 1.0), y = random_g_alg(m, rng, 1.0);
      CHECK(residual(m.killing(x, y), oracle_killing(x, y)) < 1e-12);
    }
  }
  const AlgebraModel m(1, 1);
  CHECK(residual(m.killing(m.upsilon(), m.upsilon()), cplx(-2.0)) < 1e-15);
  CHECK(residual(oracle_killing(m.upsilon(), m.upsilon()), cplx(-2.0)) < 1e-15);
  CHECK(std::abs(m.killing(m.so().e[0], m.so().e[0])) < 1e-15);
  CHECK(residual(m.killing(m.so().x[0], m.so().x[0]), cplx(8.0)) < 1e-15);
}

TEST_CASE("J on the distinguished basis") {
  const AlgebraModel m(1, 1);
  const Mat& x = m.so().x[0];
  const Mat& y = m.so().y[0];
  CHECK(residual(m.J(x), y) < 1e-15);
  CHECK(residual(m.J(y), Mat(-x)) < 1e-15);
  Rng rng(5);
  const Mat w = random_m(m, rng, 1.0);
  CHECK(residual(m.J(m.J(w)), Mat(-w)) < 1e-15);
  CHECK_THROWS_AS(m.J(m.upsilon()), std::invalid_argument);
}

TEST_CASE("exponential against the 2x2 closed forms") {
  const double a = 0.7, b = 0.3, s = std::sqrt(a * b);
  const Mat e = expm(mat2(0, a, b, 0));
  CHECK(residual(e, mat2(std::cosh(s), a * std::sinh(s) / s, b * std::sinh(s) / s, std::cosh(s))) < 1e-14);
  const double c = 0.4;
  const Mat ad = conj_by(expm(mat2(0, c, c, 0)), mat2(1, 0, 0, -1));
  CHECK(residual(ad, mat2(std::cosh(2 * c), -std::sinh(2 * c), std::sinh(2 * c), -std::cosh(2 * c))) < 1e-14);
  CHECK(residual(expm(Mat::Zero(3, 3)), Mat(Mat::Identity(3, 3))) < 1e-16);
  Rng rng(2);
  const AlgebraModel m(2, 2);
  const Mat x = random_g_alg(m, rng, 0.8);
  CHECK(residual(expm(x), taylor_exp(x)) < 1e-12);
}

TEST_CASE("Cayley element") {
  const AlgebraModel m(1, 1);
  const Mat c = cayley(m);
  const double r = 1 / std::sqrt(2.0);
  CHECK(residual(c, mat2(r, -r, r, r)) < 1e-15);
  CHECK(residual(Mat(c * c), mat2(0, -1, 1, 0)) < 1e-15);
  CHECK(residual(conj_by(c, m.so().h[0]), m.so().x[0]) < 1e-15);
}

TEST_CASE("structure verification passes and catches a bad Upsilon") {
  for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    const AlgebraModel m(p, q);
    const Report r = verify_structure(m, 1e-10);
    CHECK(r.pass());
  }
  const AlgebraModel m(2, 2);
  CHECK(m.rank() == 2);
  const Mat bad = 1.1 * m.upsilon();
  const Report r = verify_structure(m, 1e-10, bad);
  bool flagged = false;
  for (const auto& c : r.failures()) flagged = flagged || c.id == "ad_upsilon_eigenvalue";
  CHECK(flagged);
}

TEST_CASE("projections and involutions") {
  const AlgebraModel m(2, 1);
  Rng rng(9);
  const Mat x = random_g_alg(m, rng, 1.0);
  CHECK(residual(Mat(m.project(Space::k, x) + m.project(Space::m, x)), x) < 1e-15);
  CHECK(residual(Mat(m.project(Space::m_plus, x) + m.project(Space::m_minus, x)), m.project(Space::m, x)) < 1e-15);
  CHECK(residual(m.theta(m.sigma(x)), m.sigma(m.theta(x))) < 1e-15);
  CHECK(m.distance(Space::g0, m.project(Space::g0, x)) < 1e-14);
  CHECK(m.distance(Space::gu, random_gu_alg(m, rng)) < 1e-14);
}

TEST_CASE("t_lambda on the distinguished elements") {
  const AlgebraModel m(1, 1);
  const Mat t = t_lambda(m, 2.0, m.so().x[0]);
  CHECK(residual(t, Mat(2.0 * m.so().e[0] + 0.5 * m.so().f[0])) < 1e-15);
  CHECK_THROWS(t_lambda(m, 0.0, m.so().x[0]));
  Rng rng(4);
  const Mat a = random_g_alg(m, rng), b = random_g_alg(m, rng);
  const cplx l(0.3, 1.1);
  CHECK(residual(t_lambda(m, l, bracket(a, b)), bracket(t_lambda(m, l, a), t_lambda(m, l, b))) < 1e-13);
}

TEST_CASE("invalid models") {
  CHECK_THROWS_AS(AlgebraModel(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraModel(1, 0), std::invalid_argument);
}
