#include "support.hpp"

#include "hksym/orbit.hpp"

#include <doctest.h>

#include <numbers>

using namespace hksym;
using namespace hksym::test;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("realize and decompose") {
  const AlgebraModel m(1, 1);
  const Mat& x = m.so().x[0];
  const Mat id = m.identity();
  CHECK(residual(realize(m, {id, m.zero()}), m.upsilon()) < 1e-16);
  const double c = 0.5;
  const Mat expected = 0.5 * kI * mat2(std::cosh(2 * c), -std::sinh(2 * c), std::sinh(2 * c), -std::cosh(2 * c));
  CHECK(residual(realize(m, {id, c * x}), expected) < 1e-14);
  Rng rng(1);
  const Mat k = random_k0(m, rng);
  CHECK(residual(realize(m, {k, c * x}), conj_by(k, expected)) < 1e-14);

  const OrbitPoint d0 = decompose(m, m.upsilon());
  CHECK(d0.z.norm() < 1e-14);
  CHECK(residual(realize(m, d0), m.upsilon()) < 1e-14);
  const OrbitPoint d1 = decompose(m, expected);
  CHECK(residual(d1.z, Mat(c * x)) < 1e-12);
  CHECK(residual(realize(m, d1), expected) < 1e-12);
}

TEST_CASE("decompose round trip on random points") {
  for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    const AlgebraModel m(p, q);
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
      const OrbitPoint pt = random_orbit_point(m, rng, 0.5);
      const Mat mm = realize(m, pt);
      CHECK(on_orbit(m, mm));
      CHECK(residual(realize(m, decompose(m, mm)), mm) < 1e-9);
    }
  }
}

TEST_CASE("SL(2) display parameters") {
  const AlgebraModel m(1, 1);
  const double s = kPi / 4, c = kPi / 2, r = 0.3;
  const Mat mm = conj_by(sl2_rotation(s) * sl2_phase(c) * sl2_boost(r), m.upsilon());
  const Sl2Params par = decompose_sl2(m, mm);
  CHECK(std::abs(par.s - s) < 1e-12);
  CHECK(std::abs(par.r - r) < 1e-12);
  CHECK(std::abs(std::remainder(par.c - c, kPi)) < 1e-12);
}

TEST_CASE("Phi on the distinguished points") {
  const AlgebraModel m(1, 1);
  const Mat& x = m.so().x[0];
  const CotangentPoint cp = phi_map(m, {m.identity(), 0.5 * x});
  CHECK(residual(cp.w, Mat(-0.5 * kI * std::sinh(1.0) * x)) < 1e-14);
  Rng rng(2);
  const Mat u = random_gu(m, rng);
  const CotangentPoint c0 = phi_map(m, {u, m.zero()});
  CHECK(residual(c0.g, u) < 1e-14);
  CHECK(c0.w.norm() < 1e-15);
  for (int i = 0; i < 50; ++i) {
    const OrbitPoint pt = random_orbit_point(m, rng);
    CHECK(residual(realize(m, phi_inv(m, phi_map(m, pt))), realize(m, pt)) < 1e-9);
  }
}

TEST_CASE("Theta on the distinguished points") {
  const AlgebraModel m(1, 1);
  const CotangentPoint sharp = theta_map(m, {m.identity(), m.so().f[0], Flavor::flat});
  CHECK(residual(sharp.w, Mat(m.so().f[0] - m.so().e[0])) < 1e-15);
  Rng rng(3);
  const Mat u = random_gu(m, rng);
  const CotangentPoint z = theta_map(m, {u, m.zero(), Flavor::flat});
  CHECK(residual(z.g, u) < 1e-14);
  CHECK(z.w.norm() < 1e-15);
  const AlgebraModel m2(2, 1);
  const CotangentPoint cp = phi_map(m2, random_orbit_point(m2, rng));
  const CotangentPoint back = theta_map(m2, theta_inv(m2, cp));
  CHECK(residual(back.w, cp.w) < 1e-12);
  CHECK(residual(conj_by(back.g, m2.upsilon()), conj_by(cp.g, m2.upsilon())) < 1e-12);
}

TEST_CASE("tangent coordinates") {
  const AlgebraModel m(1, 1);
  const Mat& x = m.so().x[0];
  const Mat& y = m.so().y[0];
  {
    const TangentSpace ts(m, {m.identity(), m.zero()});
    Rng rng(4);
    const Mat a = random_mu(m, rng), b = random_mu(m, rng);
    const TangentVec t = ts.convert(ts.make(Repr::hat, a, b), Repr::tilde);
    CHECK(residual(t.a, a) < 1e-15);
    CHECK(residual(t.b, b) < 1e-15);
  }
  const TangentSpace ts(m, {m.identity(), 0.5 * x});
  const TangentVec t = ts.convert(ts.make(Repr::hat, kI * x, kI * y), Repr::tilde);
  CHECK(residual(t.a, Mat(kI * x)) < 1e-14);
  CHECK(residual(t.b, Mat(std::sinh(1.0) * kI * y)) < 1e-14);

  Rng rng(5);
  const AlgebraModel m2(2, 2);
  const TangentSpace ts2(m2, random_orbit_point(m2, rng));
  const TangentVec v = ts2.make(Repr::sharp, random_mu(m2, rng), random_mu(m2, rng));
  const TangentVec back = ts2.convert(ts2.convert(v, Repr::flat), Repr::sharp);
  CHECK(residual(back.a, v.a) < 1e-12);
  CHECK(residual(back.b, v.b) < 1e-12);
}

TEST_CASE("complex structures in closed form") {
  const AlgebraModel m(2, 1);
  Rng rng(6);
  const TangentSpace ts(m, random_orbit_point(m, rng));
  const Mat a = random_mu(m, rng), b = random_mu(m, rng);
  const TangentVec j1 = ts.apply_J(Structure::J1, ts.make(Repr::tilde, a, b));
  CHECK(residual(j1.a, Mat(-b)) < 1e-15);
  CHECK(residual(j1.b, a) < 1e-15);
  const TangentVec j3 = ts.apply_J(Structure::J3, ts.make(Repr::sharp, a, b));
  CHECK(residual(j3.a, m.J(a)) < 1e-14);
  CHECK(residual(j3.b, Mat(-m.J(b))) < 1e-14);
  const TangentVec v = ts.make(Repr::hat, a, b);
  const TangentVec j2 = ts.apply_J(Structure::J2, v);
  const TangentVec j31 = ts.apply_J(Structure::J3, ts.apply_J(Structure::J1, v));
  CHECK(residual(j2.a, j31.a) < 1e-12);
  CHECK(residual(j2.b, j31.b) < 1e-12);
}

TEST_CASE("forms at the base point of su(1,1)") {
  const AlgebraModel m(1, 1);
  const Mat& x = m.so().x[0];
  const Mat& y = m.so().y[0];
  const TangentSpace ts(m, {m.identity(), m.zero()});
  const TangentVec vx = ts.make(Repr::tilde, kI * x, m.zero());
  const TangentVec vy = ts.make(Repr::tilde, kI * y, m.zero());
  const FormValues f = ts.forms(vx, vy);
  // -kappa(J(ix), iy) = kappa(y, y) = 8 with kappa = 4 tr
  CHECK(std::abs(f.w3 - 8.0) < 1e-13);
  CHECK(std::abs(f.w2) < 1e-13);
  CHECK(std::abs(ts.forms(vx, vx).metric - 8.0) < 1e-13);
  CHECK(std::abs(4.0 * (y * y).trace().real() - 8.0) < 1e-15);
}

TEST_CASE("KKS form") {
  const AlgebraModel m(1, 1);
  const Mat& x = m.so().x[0];
  const Mat& y = m.so().y[0];
  CHECK(residual(bracket(x, y), Mat(-4.0 * m.upsilon())) < 1e-15);
  CHECK(residual(kks_free(m, m.upsilon(), kI * x, kI * y), cplx(0, 8)) < 1e-13);
  CHECK(std::abs(kks_free(m, m.upsilon(), kI * x, kI * x)) < 1e-15);
  // Upsilon commutes with itself, so it is a stabilizer direction at Upsilon
  CHECK(residual(kks_free(m, m.upsilon(), kI * x, kI * y + 0.7 * m.upsilon()), cplx(0, 8)) < 1e-13);
}

TEST_CASE("Liouville forms") {
  const AlgebraModel m(1, 1);
  const cplx w(0.3, -0.2);
  const CotangentPoint flat{m.identity(), w * m.so().f[0], Flavor::flat};
  const OrbitPoint pt = phi_inv(m, flat);
  const TangentSpace ts(m, pt);
  // e - f lies in m_u and has m+ part e
  const Mat a = m.so().e[0] - m.so().f[0];
  const TangentVec v = ts.make(Repr::flat, a, m.zero());
  CHECK(residual(ts.lambda_complex(v), 8.0 * w) < 1e-12);
  const CotangentPoint zero{m.identity(), m.zero(), Flavor::flat};
  const TangentSpace t0(m, phi_inv(m, zero));
  CHECK(std::abs(t0.lambda_complex(t0.make(Repr::flat, a, m.zero()))) < 1e-14);
}

TEST_CASE("Kahler potentials") {
  const AlgebraModel m(1, 1);
  Rng rng(7);
  const Mat u = random_gu(m, rng);
  CHECK(std::abs(potential_phi(m, {u, m.zero()}) + 2.0) < 1e-13);
  const double v = potential_phi(m, {m.identity(), 0.5 * m.so().x[0]});
  CHECK(std::abs(v + 2.0 * std::cosh(1.0)) < 1e-13);
  CHECK(std::abs(v + 3.0862) < 1e-4);
  for (int i = 0; i < 50; ++i) {
    const OrbitPoint pt = random_orbit_point(m, rng);
    CHECK(std::abs(potential_phi(m, pt) - potential_phi_prime(m, phi_map(m, pt)) + 2.0) < 1e-10);
  }
}

TEST_CASE("tangent vectors must sit at the right base") {
  const AlgebraModel m(1, 1);
  Rng rng(8);
  const TangentSpace a(m, random_orbit_point(m, rng)), b(m, random_orbit_point(m, rng));
  const TangentVec v = a.make(Repr::hat, random_mu(m, rng), random_mu(m, rng));
  CHECK_THROWS(b.forms(v, v));
}
