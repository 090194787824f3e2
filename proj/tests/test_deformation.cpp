#include "support.hpp"

#include "hksym/deformation.hpp"

#include <doctest.h>

#include <numbers>

using namespace hksym;
using namespace hksym::test;

TEST_CASE("stereographic parameter") {
  const Triple a = sphere_param(1.0).triple, b = sphere_param(0.0).triple, c = sphere_param(kI).triple;
  CHECK(std::abs(a.l1 - 1) + std::abs(a.l2) + std::abs(a.l3) < 1e-15);
  CHECK(std::abs(b.l3 - 1) + std::abs(b.l1) + std::abs(b.l2) < 1e-15);
  CHECK(std::abs(c.l2 - 1) + std::abs(c.l1) + std::abs(c.l3) < 1e-15);
  CHECK(sphere_param_infinity().infinite);
}

TEST_CASE("nu") {
  CHECK(residual(nu(0.5), cplx(3.0)) < 1e-15);
  CHECK(residual(nu(2.0), cplx(-3.0)) < 1e-15);
  const cplx l(0.3, 0.45);
  CHECK(residual(nu(std::conj(l)), std::conj(nu(l))) < 1e-15);
  CHECK_THROWS(nu(0.0));
  CHECK_THROWS(nu(std::polar(1.0, 0.3)));
}

TEST_CASE("T_lambda on su(1,1) at (I, 0.5 x)") {
  const AlgebraModel m(1, 1);
  const Mat& x = m.so().x[0];
  const OrbitPoint pt{m.identity(), 0.5 * x};
  const OrbitPoint img = T_lambda(m, 0.5, pt);
  // direct oracle: Ad_{exp(t_lambda Z)} Upsilon with a plain Taylor exponential
  const Mat tz = 0.5 * mat2(0, 0.5, 2.0, 0);
  const Mat g = taylor_exp(tz);
  CHECK(residual(realize(m, img), Mat(g * m.upsilon() * g.inverse())) < 1e-12);
  const Sl2Params par = decompose_sl2(m, realize(m, img));
  CHECK(std::abs(par.s - 0.2595) < 5e-4);
  CHECK(std::abs(par.r - 0.5888) < 5e-4);
  // cosh 2c = cosh 2r cos 2s
  CHECK(std::abs(std::cosh(1.0) - std::cosh(2 * par.r) * std::cos(2 * par.s)) < 1e-12);
  const auto [s, r] = coordinate_sr(0.5, 0.5);
  CHECK(std::abs(std::abs(s) - par.s) < 1e-12);
  CHECK(std::abs(r - par.r) < 1e-12);
}

TEST_CASE("T_lambda basics") {
  const AlgebraModel m(2, 1);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    const OrbitPoint pt = random_orbit_point(m, rng);
    CHECK(residual(realize(m, T_lambda(m, 1.0, pt)), realize(m, pt)) < 1e-12);
    const cplx l(0.4, 0.7);
    const OrbitPoint img = T_lambda(m, l, pt);
    CHECK(residual(realize(m, T_lambda_inv(m, l, img)), realize(m, pt)) < 1e-9);
  }
}

TEST_CASE("SL(2) matrix identity") {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const double c = rng.uniform(-2, 2);
    const cplx l = std::polar(rng.uniform(0.1, 4.0), rng.uniform(-3.14, 3.14));
    const auto [lhs, rhs] = sl2_identity_sides(c, l);
    CHECK(residual(lhs, rhs) < 1e-10);
    // left side by a plain Taylor exponential
    const Mat g = taylor_exp(mat2(0, c * l, c / l, 0), 80);
    CHECK(residual(Mat(g * mat2(1, 0, 0, -1) * g.inverse()), lhs) < 1e-9);
    for (double r : abc_residuals(c, std::abs(l))) CHECK(r < 1e-12);
  }
}

TEST_CASE("cotangent form of T_lambda") {
  const AlgebraModel m(1, 1);
  const Mat& x = m.so().x[0];
  const double d = 0.4, lam = 0.6;
  // [g, W] and [g k, Ad_k^{-1} W] are the same point, so compare Ad_g W and Ad_g Upsilon
  auto same_point = [&](const CotangentPoint& a, const Mat& g, const Mat& w) {
    return std::max(residual(conj_by(a.g, a.w), conj_by(g, w)), residual(conj_by(a.g, m.upsilon()), conj_by(g, m.upsilon())));
  };
  const CotangentPoint out = T_lambda_cotangent(m, lam, {m.identity(), kI * d * x, Flavor::sharp});
  // the group part moves too; W' is fixed up to K_0
  const double expected = 0.5 * d * (1 / lam + lam);
  CHECK(std::abs(reduce_to_a0(m, m.project(Space::m0, kI * out.w)).coeffs[0] - expected) < 1e-13);
  CHECK(is_unitary(out.g, 1e-12));
  const CotangentPoint same = T_lambda_cotangent(m, 1.0, {m.identity(), kI * d * x, Flavor::sharp});
  CHECK(same_point(same, m.identity(), kI * d * x) < 1e-14);
}

TEST_CASE("differential of T_lambda") {
  const AlgebraModel m(2, 1);
  Rng rng(3);
  for (int i = 0; i < 5; ++i) {
    const OrbitPoint pt = random_orbit_point(m, rng);
    const TangentSpace ts(m, pt);
    const TangentVec v = ts.make(Repr::hat, random_mu(m, rng), random_mu(m, rng));
    const cplx l = std::polar(rng.uniform(0.3, 2.0), rng.uniform(-3, 3));
    const TangentVec a = dT_lambda(m, l, v, DiffMethod::pushforward);
    const TangentVec b = dT_lambda(m, l, v, DiffMethod::finite_diff);
    CHECK(residual(a.a, b.a) < 1e-6);
    CHECK(residual(a.b, b.b) < 1e-6);
    const TangentVec id = dT_lambda(m, 1.0, v, DiffMethod::pushforward);
    CHECK(residual(TangentSpace(m, id.base).ambient(id), ts.ambient(v)) < 1e-12);
  }
}

TEST_CASE("theorem verifiers") {
  const AlgebraModel m(2, 2);
  Rng rng(4);
  const OrbitPoint pt = random_orbit_point(m, rng);
  const TangentSpace ts(m, pt);
  std::vector<TangentVec> frame;
  for (int k = 0; k < 3; ++k) frame.push_back(ts.make(Repr::hat, random_mu(m, rng), random_mu(m, rng)));
  CHECK(verify_theorem(m, Theorem::intertwine_J, 1.0, pt, frame, 1e-9).pass());
  CHECK(verify_theorem(m, Theorem::hol_symplectic_pullback, kI, pt, frame, 1e-8).pass());
  CHECK(verify_theorem(m, Theorem::omega3_pullback, 0.5, pt, frame, 1e-8).pass());
  CHECK(verify_theorem(m, Theorem::abcd_solution, cplx(1, 1), pt, frame, 1e-9).pass());
  CHECK(t_identity_residual(m, cplx(0.3, 0.8)) < 1e-12);
  CHECK(t_nu_identity_residual(m, 0.5) < 1e-12);
}
