#include "support.hpp"

#include "hksym/deformation.hpp"
#include "hksym/moment.hpp"

#include <doctest.h>

using namespace hksym;
using namespace hksym::test;

TEST_CASE("moment maps at distinguished points") {
  const AlgebraModel m(1, 1);
  Rng rng(1);
  const Mat w = random_mu(m, rng, 0.8);
  CHECK(residual(mu_cotangent(m, MomentKind::mu1, {m.identity(), w, Flavor::sharp}), w) < 1e-14);

  const Mat mu2 = mu_orbit(m, MomentKind::mu2, {m.identity(), 0.5 * m.so().x[0]});
  CHECK(residual(mu2, Mat(0.5 * std::sinh(1.0) * mat2(0, 1, -1, 0))) < 1e-14);

  const Mat u = random_gu(m, rng);
  CHECK(residual(mu_orbit(m, MomentKind::mu3, {u, m.zero()}), conj_by(u, m.upsilon())) < 1e-14);

  const Mat& f = m.so().f[0];
  CHECK(residual(mu_hol_J3(m, {m.identity(), f, Flavor::flat}), Mat(2.0 * f)) < 1e-14);
  CHECK(mu_hol_J3(m, {u, m.zero(), Flavor::flat}).norm() < 1e-15);
}

TEST_CASE("holomorphic J1 moment is the inclusion") {
  const AlgebraModel m(2, 2);
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    const OrbitPoint pt = random_orbit_point(m, rng);
    const Mat hol = Mat(-kI * mu_orbit(m, MomentKind::mu2, pt) + mu_orbit(m, MomentKind::mu3, pt));
    CHECK(residual(hol, realize(m, pt)) < 1e-9);
  }
}

TEST_CASE("mu_lambda") {
  const AlgebraModel m(1, 1);
  const OrbitPoint base{m.identity(), m.zero()};
  CHECK(residual(mu_lambda(m, 0.5, base), Mat(0.6 * m.upsilon())) < 1e-14);
  Rng rng(3);
  const Mat u = random_gu(m, rng);
  const OrbitPoint pu{u, m.zero()};
  const Mat near0 = mu_lambda(m, 1e-6, pu), mu3 = mu_orbit(m, MomentKind::mu3, pu);
  CHECK(residual(near0, mu3) < 1e-5);
  const OrbitPoint pt = random_orbit_point(m, rng);
  CHECK(residual(mu_lambda(m, cplx(0.2, 0.4), {u * pt.g, pt.z}), conj_by(u, mu_lambda(m, cplx(0.2, 0.4), pt))) < 1e-10);
}

TEST_CASE("moment equation by finite differences") {
  const AlgebraModel m(1, 1);
  const OrbitPoint pt{m.identity(), 0.5 * m.so().x[0]};
  CHECK(verify_moment_equation(m, {MomentKind::mu3, 0.5, false}, 5, 1e-5, 1, pt).pass());
  CHECK(verify_moment_equation(m, {MomentKind::mu1, 0.5, true}, 10, 1e-5, 2).pass());
  const AlgebraModel m2(2, 1);
  CHECK(verify_moment_equation(m2, {MomentKind::mu_lambda, cplx(0.3, 0.2), false}, 10, 1e-5, 3).pass());
}

TEST_CASE("mismatched pairing is reported") {
  const AlgebraModel m(2, 1);
  const Report r = verify_moment_equation(m, {MomentKind::mu2, 0.5, false}, 10, 1e-5, 4, std::nullopt,
                                          FormChoice{MomentKind::mu3});
  CHECK_FALSE(r.pass());
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].max_residual > 1e-2);
}
