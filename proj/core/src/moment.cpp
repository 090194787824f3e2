#include "hksym/moment.hpp"

#include "hksym/deformation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hksym {

Mat mu_orbit(const AlgebraModel& model, MomentKind which, const OrbitPoint& pt) {
  switch (which) {
    case MomentKind::mu1: return im_part(conj_by(pt.g * expm(model.J(pt.z)), model.upsilon()));
    case MomentKind::mu2: return -im_part(realize(model, pt));
    case MomentKind::mu3: return re_part(realize(model, pt));
    case MomentKind::mu_lambda: break;
  }
  throw std::invalid_argument("mu_orbit: use mu_lambda for the lambda family");
}

Mat mu_cotangent(const AlgebraModel& model, MomentKind which, const CotangentPoint& cp) {
  const CotangentPoint s = cp.flavor == Flavor::flat ? theta_map(model, cp) : cp;
  switch (which) {
    case MomentKind::mu1: return conj_by(s.g, s.w);
    case MomentKind::mu2: return conj_by(s.g, model.J(s.w));
    case MomentKind::mu3: {
      const Mat z = p_inv(model, model.project(Space::m0, kI * s.w));
      const Mat sym = 0.5 * (conj_by(expm(z), model.upsilon()) + conj_by(expm(-z), model.upsilon()));
      return conj_by(s.g, sym);
    }
    case MomentKind::mu_lambda: break;
  }
  throw std::invalid_argument("mu_cotangent: use mu_lambda for the lambda family");
}

Mat mu_hol_J3(const AlgebraModel& model, const CotangentPoint& flat) {
  if (flat.flavor != Flavor::flat) throw std::invalid_argument("mu_hol_J3 expects a flat point");
  return 2.0 * conj_by(flat.g, model.project(Space::m_minus, flat.w));
}

Mat mu_hol_J1(const AlgebraModel& model, const OrbitPoint& pt) {
  return -kI * mu_orbit(model, MomentKind::mu2, pt) + mu_orbit(model, MomentKind::mu3, pt);
}

Mat mu_lambda(const AlgebraModel& model, cplx lambda, const OrbitPoint& pt) {
  const cplx n = nu(lambda);
  const double a2 = std::norm(lambda);
  const double scale = (1.0 - a2) / (1.0 + a2);
  return scale * re_part(conj_by(pt.g * expm(t_lambda(model, n, pt.z)), model.upsilon()));
}

TangentVec generator_hat(const TangentSpace& ts, const Mat& x) {
  const AlgebraModel& m = ts.model();
  const Mat loc = conj_by(ts.base().g.adjoint(), x);
  return ts.make(Repr::hat, m.project(Space::mu, loc),
                 m.project(Space::mu, -kI * bracket(m.project(Space::k, loc), ts.base().z)));
}

TangentVec generator_sharp(const TangentSpace& ts, const Mat& x) {
  const AlgebraModel& m = ts.model();
  const Mat loc = conj_by(ts.base().g.adjoint(), x);
  return ts.make(Repr::sharp, m.project(Space::mu, loc),
                 m.project(Space::mu, bracket(m.project(Space::k, loc), ts.w())));
}

namespace {

double form_value(const FormValues& f, const FormChoice& c) {
  switch (c.kind) {
    case MomentKind::mu1: return f.w1;
    case MomentKind::mu2: return f.w2;
    case MomentKind::mu3: return f.w3;
    case MomentKind::mu_lambda: return f.omega(sphere_triple(c.lambda));
  }
  return 0.0;
}

const char* kind_name(MomentKind k) {
  switch (k) {
    case MomentKind::mu1: return "mu1";
    case MomentKind::mu2: return "mu2";
    case MomentKind::mu3: return "mu3";
    case MomentKind::mu_lambda: return "mu_lambda";
  }
  return "?";
}

}  // namespace

Report verify_moment_equation(const AlgebraModel& model, const MomentTarget& target, int samples,
                              double tol, std::uint64_t seed, const std::optional<OrbitPoint>& point,
                              const std::optional<FormChoice>& form, double h) {
  Report rep;
  rep.suite = "moment";
  const FormChoice pairing = form.value_or(FormChoice{target.kind, target.lambda});
  Tally tally;
  try {
    if (target.kind == MomentKind::mu_lambda) (void)nu(target.lambda);
    for (int i = 0; i < samples; ++i) {
      Rng rng(stream_seed(seed, std::uint64_t(i)));
      const OrbitPoint pt = point.value_or(random_orbit_point(model, rng));
      const TangentSpace ts(model, pt);
      const Mat a = random_mu(model, rng), b = random_mu(model, rng);
      const Mat x = random_gu_alg(model, rng);
      double lhs, rhs;
      if (target.cotangent) {
        const CotangentPoint cp = phi_map(model, pt);
        auto mu_at = [&](double t) {
          return mu_cotangent(model, target.kind, CotangentPoint{cp.g * expm(t * a), cp.w + t * b});
        };
        const Mat dmu = (mu_at(h) - mu_at(-h)) / (2.0 * h);
        lhs = model.killing(dmu, x).real();
        const TangentVec v = ts.make(Repr::sharp, a, b);
        rhs = form_value(ts.forms(v, generator_sharp(ts, x)), pairing);
      } else {
        auto mu_at = [&](double t) {
          const OrbitPoint q{pt.g * expm(t * a), pt.z + t * kI * b};
          return target.kind == MomentKind::mu_lambda ? mu_lambda(model, target.lambda, q)
                                                      : mu_orbit(model, target.kind, q);
        };
        const Mat dmu = (mu_at(h) - mu_at(-h)) / (2.0 * h);
        lhs = model.killing(dmu, x).real();
        const TangentVec v = ts.make(Repr::hat, a, b);
        rhs = form_value(ts.forms(v, generator_hat(ts, x)), pairing);
      }
      tally.add(residual(lhs, rhs));
    }
  } catch (const std::exception&) {
    tally.add(std::numeric_limits<double>::quiet_NaN());
  }
  std::string id = std::string("moment_equation_") + kind_name(target.kind) + (target.cotangent ? "_cotangent" : "");
  if (form) id += std::string("_vs_omega_") + kind_name(form->kind);
  rep.add(tally.finish(id, "moment map defining equation", tol, model.label()));
  return rep;
}

}  // namespace hksym
