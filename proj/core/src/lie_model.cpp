#include "hksym/lie_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hksym {

namespace {

Mat unit(int n, int i, int j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

AlgebraModel::AlgebraModel(int p, int q) : p_(p), q_(q) {
  if (p < 1 || q < 1 || p + q < 2)
    throw std::invalid_argument("signature (p,q) requires p >= 1, q >= 1");
  const int nn = n();
  eta_ = Mat::Identity(nn, nn);
  upsilon_ = Mat::Zero(nn, nn);
  for (int i = 0; i < nn; ++i) {
    if (i >= p) eta_(i, i) = -1.0;
    upsilon_(i, i) = i < p ? cplx(0.0, double(q) / nn) : cplx(0.0, -double(p) / nn);
  }

  so_.rank = std::min(p, q);
  so_.upsilon_prime = upsilon_;
  for (int j = 0; j < so_.rank; ++j) {
    Mat e = unit(nn, j, p + j);
    Mat f = unit(nn, p + j, j);
    Mat h = unit(nn, j, j) - unit(nn, p + j, p + j);
    so_.e.push_back(e);
    so_.f.push_back(f);
    so_.h.push_back(h);
    so_.x.push_back(e + f);
    so_.y.push_back(kI * (e - f));
    so_.upsilon_psi.push_back(0.5 * kI * h);
    so_.upsilon_prime -= so_.upsilon_psi.back();
  }

  // The trace form must agree with the ad-trace; check a handful of basis pairs.
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      const Mat a = i == j ? Mat(unit(nn, i, i) - unit(nn, (i + 1) % nn, (i + 1) % nn))
                           : unit(nn, i, j);
      const Mat b = a.adjoint();
      if (std::abs(killing(a, b) - killing_ad(a, b)) > 1e-9 * (1.0 + std::abs(killing(a, b))))
        throw std::logic_error("Killing normalization mismatch");
    }
}

std::string AlgebraModel::label() const {
  return "su(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
}

Mat AlgebraModel::project(Space s, const Mat& x) const {
  const int nn = n();
  Mat out = Mat::Zero(nn, nn);
  switch (s) {
    case Space::k:
      out.topLeftCorner(p_, p_) = x.topLeftCorner(p_, p_);
      out.bottomRightCorner(q_, q_) = x.bottomRightCorner(q_, q_);
      return out;
    case Space::m:
      return x - project(Space::k, x);
    case Space::m_plus:
      out.topRightCorner(p_, q_) = x.topRightCorner(p_, q_);
      return out;
    case Space::m_minus:
      out.bottomLeftCorner(q_, p_) = x.bottomLeftCorner(q_, p_);
      return out;
    case Space::g0:
      return 0.5 * (x + sigma(x));
    case Space::gu:
      return 0.5 * (x + theta(x));
    case Space::k0:
      return project(Space::gu, project(Space::k, x));
    case Space::m0:
      return project(Space::g0, project(Space::m, x));
    case Space::mu:
      return project(Space::gu, project(Space::m, x));
  }
  return out;
}

cplx AlgebraModel::killing_ad(const Mat& x, const Mat& y) const {
  const int nn = n();
  cplx tr = 0.0;
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      const Mat e = unit(nn, i, j);
      tr += bracket(x, bracket(y, e))(i, j);
    }
  return tr;
}

Mat AlgebraModel::J(const Mat& w) const {
  if (project(Space::k, w).norm() > 1e-10 * std::max(1.0, w.norm()))
    throw std::invalid_argument("J is defined on m only");
  return bracket(upsilon_, w);
}

Vec AlgebraModel::coords_m(const Mat& x) const {
  Vec v(dim_m());
  int k = 0;
  for (int a = 0; a < p_; ++a)
    for (int b = 0; b < q_; ++b) v(k++) = x(a, p_ + b);
  for (int b = 0; b < q_; ++b)
    for (int a = 0; a < p_; ++a) v(k++) = x(p_ + b, a);
  return v;
}

Mat AlgebraModel::from_coords_m(const Vec& v) const {
  Mat x = zero();
  int k = 0;
  for (int a = 0; a < p_; ++a)
    for (int b = 0; b < q_; ++b) x(a, p_ + b) = v(k++);
  for (int b = 0; b < q_; ++b)
    for (int a = 0; a < p_; ++a) x(p_ + b, a) = v(k++);
  return x;
}

std::vector<Mat> AlgebraModel::basis_m0() const {
  std::vector<Mat> out;
  const int nn = n();
  for (int a = 0; a < p_; ++a)
    for (int b = 0; b < q_; ++b) {
      const Mat e = unit(nn, a, p_ + b), f = unit(nn, p_ + b, a);
      out.push_back(e + f);
      out.push_back(kI * (e - f));
    }
  return out;
}

AlgebraModel build_model(int p, int q) { return AlgebraModel(p, q); }

Mat cayley(const AlgebraModel& model) {
  Mat s = model.zero();
  for (const Mat& y : model.so().y) s += kI * (std::numbers::pi / 4.0) * y;
  return expm(s);
}

Report verify_structure(const AlgebraModel& model, double tol,
                        const std::optional<Mat>& upsilon_override, std::uint64_t seed,
                        int samples) {
  Report rep;
  rep.suite = "structure";
  const std::string lbl = model.label();
  const Mat ups = upsilon_override.value_or(model.upsilon());
  const SOSystem& so = model.so();
  Rng rng(seed);

  Tally triple;
  for (int j = 0; j < so.rank; ++j) {
    triple.add(residual(bracket(so.upsilon_psi[j], so.x[j]), so.y[j]));
    triple.add(residual(bracket(so.upsilon_psi[j], so.y[j]), Mat(-so.x[j])));
    triple.add(residual(bracket(so.x[j], so.y[j]), Mat(-4.0 * so.upsilon_psi[j])));
    triple.add(residual(model.sigma(so.e[j]), so.f[j]));
    triple.add(residual(bracket(so.e[j], so.f[j]), so.h[j]));
  }
  rep.add(triple.finish("sl2_triple_relations", "split sl2-triple relations", tol, lbl));

  Tally ortho;
  for (int i = 0; i < so.rank; ++i)
    for (int j = 0; j < so.rank; ++j) {
      if (i == j) continue;
      for (const auto* fam : {&so.e, &so.f, &so.x, &so.y})
        for (const auto* gam : {&so.e, &so.f, &so.x, &so.y})
          ortho.add(bracket((*fam)[i], (*gam)[j]).norm());
    }
  if (so.rank < 2) ortho.add(0.0);
  rep.add(ortho.finish("strong_orthogonality", "strongly orthogonal roots commute", tol, lbl));

  Tally ad_ups, abel, invol, korth, closure, recon;
  for (int s = 0; s < samples; ++s) {
    const Mat w = random_m(model, rng, 1.0);
    const Mat wp = model.project(Space::m_plus, w), wm = model.project(Space::m_minus, w);
    ad_ups.add(residual(bracket(ups, wp), Mat(kI * wp)));
    ad_ups.add(residual(bracket(ups, wm), Mat(-kI * wm)));

    const Mat w2 = random_m(model, rng, 1.0);
    abel.add(bracket(wp, model.project(Space::m_plus, w2)).norm());
    abel.add(bracket(wm, model.project(Space::m_minus, w2)).norm());

    Mat x = random_g_alg(model, rng, 1.0);
    invol.add(residual(model.sigma(model.theta(x)), model.theta(model.sigma(x))));
    invol.add(residual(model.sigma(model.sigma(x)), x));
    invol.add(residual(model.theta(model.theta(x)), x));

    const Mat kx = model.project(Space::k, x);
    korth.add(std::abs(model.killing(kx, w)) / std::max(1.0, kx.norm() * w.norm()));
    closure.add(model.project(Space::k, bracket(kx, w)).norm() / std::max(1.0, kx.norm() * w.norm()));
    recon.add(residual(Mat(model.project(Space::k, x) + model.project(Space::m, x)), x));
    recon.add(residual(Mat(model.project(Space::g0, x) + kI * model.project(Space::g0, Mat(-kI * x))), x));
  }
  rep.add(ad_ups.finish("ad_upsilon_eigenvalue", "ad_Upsilon acts by +-i on m+-", tol, lbl));
  rep.add(abel.finish("m_plus_minus_abelian", "[m+,m+] = [m-,m-] = 0", tol, lbl));
  rep.add(invol.finish("involutions_commute", "sigma and theta commuting involutions", tol, lbl));
  rep.add(korth.finish("killing_k_m_orthogonal", "k and m are Killing-orthogonal", tol, lbl));
  rep.add(closure.finish("bracket_k_m_in_m", "[k,m] lies in m", tol, lbl));
  rep.add(recon.finish("projection_reconstruction", "projections reconstruct X", tol, lbl));

  Tally kill;
  for (int s = 0; s < samples; ++s) {
    const Mat a = random_g_alg(model, rng, 1.0), b = random_g_alg(model, rng, 1.0);
    kill.add(residual(model.killing(a, b), model.killing_ad(a, b)));
  }
  rep.add(kill.finish("killing_trace_form", "trace form equals ad-trace", tol, lbl));
  return rep;
}

Mat random_m0(const AlgebraModel& model, Rng& rng, double scale) {
  Mat z = model.zero();
  for (const Mat& b : model.basis_m0()) z += scale * rng.normal() * b;
  return z;
}

Mat random_mu(const AlgebraModel& model, Rng& rng, double scale) {
  return kI * random_m0(model, rng, scale);
}

Mat random_m(const AlgebraModel& model, Rng& rng, double scale) {
  const Mat a = random_m0(model, rng, scale);
  return a + kI * random_m0(model, rng, scale);
}

Mat random_k0_alg(const AlgebraModel& model, Rng& rng, double scale) {
  const int n = model.n();
  Mat x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = cplx(rng.normal(), rng.normal()) * scale;
  x = model.project(Space::k0, x);
  x -= (x.trace() / double(n)) * model.identity();
  return x;
}

Mat random_gu_alg(const AlgebraModel& model, Rng& rng, double scale) {
  const int n = model.n();
  Mat x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = cplx(rng.normal(), rng.normal()) * scale;
  x = re_part(x);
  x -= (x.trace() / double(n)) * model.identity();
  return x;
}

Mat random_g_alg(const AlgebraModel& model, Rng& rng, double scale) {
  const Mat a = random_gu_alg(model, rng, scale);
  return a + kI * random_gu_alg(model, rng, scale);
}

Mat random_gu(const AlgebraModel& model, Rng& rng, double scale) {
  return expm(random_gu_alg(model, rng, scale));
}

Mat random_k0(const AlgebraModel& model, Rng& rng, double scale) {
  return expm(random_k0_alg(model, rng, scale));
}

Mat random_g0(const AlgebraModel& model, Rng& rng, double scale) {
  return expm(random_k0_alg(model, rng, scale) + random_m0(model, rng, scale));
}

}  // namespace hksym
