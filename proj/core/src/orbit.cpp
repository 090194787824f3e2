#include "hksym/orbit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hksym {

const char* repr_name(Repr r) {
  switch (r) {
    case Repr::tilde: return "tilde";
    case Repr::hat: return "hat";
    case Repr::sharp: return "sharp";
    case Repr::flat: return "flat";
  }
  return "?";
}

Mat realize(const AlgebraModel& model, const OrbitPoint& pt) {
  return conj_by(pt.g * expm(pt.z), model.upsilon());
}

bool on_orbit(const AlgebraModel& model, const Mat& m, double tol) {
  const double a = double(model.q()) / model.n(), b = double(model.p()) / model.n();
  const Mat id = model.identity();
  const Mat minpoly = (m - kI * a * id) * (m + kI * b * id);
  const double scale = std::max(1.0, m.squaredNorm());
  return minpoly.norm() <= tol * scale && std::abs(m.trace()) <= tol * std::max(1.0, m.norm());
}

OrbitPoint decompose(const AlgebraModel& model, const Mat& m) {
  if (!on_orbit(model, m, 1e-8)) throw std::invalid_argument("decompose: matrix is not on the orbit");
  const Mat h = -kI * re_part(m);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  Mat v = es.eigenvectors().rowwise().reverse();  // descending
  v.col(0) *= std::exp(-kI * std::arg(v.determinant()));
  const Mat m0 = conj_by(v.adjoint(), m);
  Mat w = model.J(model.project(Space::m, m0));
  w = model.project(Space::m0, w);
  OrbitPoint pt{v, p_inv(model, w)};
  if (residual(realize(model, pt), m) > 1e-8)
    throw std::runtime_error("decompose: reconstruction failed");
  return pt;
}

Mat sl2_rotation(double s) {
  Mat r(2, 2);
  r << std::cos(s), -std::sin(s), std::sin(s), std::cos(s);
  return r;
}

Mat sl2_phase(double c) {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = std::exp(kI * c);
  d(1, 1) = std::exp(-kI * c);
  return d;
}

Mat sl2_boost(double r) {
  Mat h(2, 2);
  h << std::cosh(r), std::sinh(r), std::sinh(r), std::cosh(r);
  return h;
}

Sl2Params decompose_sl2(const AlgebraModel& model, const Mat& m) {
  if (model.p() != 1 || model.q() != 1) throw std::invalid_argument("decompose_sl2 needs su(1,1)");
  const OrbitPoint pt = decompose(model, m);
  const A0Coords red = reduce_to_a0(model, pt.z);
  const Mat gk = pt.g * red.k;
  Sl2Params out;
  out.r = red.coeffs[0];
  const cplx alpha = gk(0, 0), beta = gk(1, 0);
  out.s = std::atan2(std::abs(beta), std::abs(alpha));
  double b;
  if (std::abs(beta) < 1e-12) {
    out.a = 0.0;
    b = std::arg(alpha);
  } else if (std::abs(alpha) < 1e-12) {
    out.a = 0.0;
    b = std::arg(beta);
  } else {
    b = 0.5 * (std::arg(alpha) + std::arg(beta));
    out.a = 0.5 * (std::arg(alpha) - std::arg(beta));
  }
  const double pi = std::numbers::pi;
  out.c = b - pi * std::floor(b / pi);
  if (out.c > pi - 1e-12) out.c = 0.0;
  if (out.r < 1e-12) out.c = 0.0;
  out.point = OrbitPoint{sl2_phase(out.a) * sl2_rotation(out.s) * sl2_phase(out.c), out.r * model.so().x[0]};
  if (residual(realize(model, out.point), m) > 1e-8)
    throw std::runtime_error("decompose_sl2: reconstruction failed");
  return out;
}

CotangentPoint phi_map(const AlgebraModel& model, const OrbitPoint& pt) {
  return {pt.g, -kI * p_map(model, pt.z), Flavor::sharp};
}

OrbitPoint phi_inv(const AlgebraModel& model, const CotangentPoint& cp) {
  const CotangentPoint sharp = cp.flavor == Flavor::flat ? theta_map(model, cp) : cp;
  require_mu(model, sharp.w, "phi_inv");
  return {sharp.g, p_inv(model, model.project(Space::m0, kI * sharp.w))};
}

CotangentPoint phi_triv(const AlgebraModel&, const OrbitPoint& pt) { return {pt.g, pt.z, Flavor::sharp}; }

std::pair<Mat, Mat> unitary_factor(const AlgebraModel& model, const Mat& g) {
  const int n = model.n(), p = model.p(), q = model.q();
  // Last q columns of g_u span the same subspace as the last q columns of g.
  Mat cols(n, n);
  cols.leftCols(q) = g.rightCols(q);
  cols.rightCols(p) = g.leftCols(p);
  Eigen::HouseholderQR<Mat> qr(cols);
  const Mat qmat = qr.householderQ() * Mat::Identity(n, n);
  Mat gu(n, n);
  gu.rightCols(q) = qmat.leftCols(q);
  gu.leftCols(p) = qmat.rightCols(p);
  gu.col(0) *= std::exp(-kI * std::arg(gu.determinant()));
  return {gu, gu.adjoint() * g};
}

CotangentPoint theta_map(const AlgebraModel& model, const CotangentPoint& flat) {
  if (flat.flavor != Flavor::flat) throw std::invalid_argument("theta_map expects a flat point");
  Mat gu = flat.g, wm = model.project(Space::m_minus, flat.w);
  if (!is_unitary(flat.g)) {
    auto [u, q] = unitary_factor(model, flat.g);
    gu = u;
    wm = model.project(Space::m_minus, conj_by(q, wm));
  }
  return {gu, wm + model.theta(wm), Flavor::sharp};
}

CotangentPoint theta_inv(const AlgebraModel& model, const CotangentPoint& sharp) {
  if (sharp.flavor != Flavor::sharp) throw std::invalid_argument("theta_inv expects a sharp point");
  return {sharp.g, model.project(Space::m_minus, sharp.w), Flavor::flat};
}

Triple sphere_triple(cplx lambda) {
  const double d = 1.0 + std::norm(lambda);
  return {2.0 * lambda.real() / d, 2.0 * lambda.imag() / d, (1.0 - std::norm(lambda)) / d};
}

TangentSpace::TangentSpace(const AlgebraModel& model, OrbitPoint base)
    : model_(&model), base_(std::move(base)), ops_(base_ops(model, base_.z)) {
  w_ = -kI * p_map(model, base_.z);
  wm_ = model.project(Space::m_minus, w_);
  gexp_ = base_.g * expm(base_.z);
  m_ = conj_by(gexp_, model.upsilon());
}

void TangentSpace::check_base(const TangentVec& v) const {
  if (residual(v.base.g, base_.g) > 1e-12 || residual(v.base.z, base_.z) > 1e-12)
    throw std::invalid_argument("tangent vector belongs to a different base point");
}

TangentVec TangentSpace::make(Repr repr, const Mat& a, const Mat& b) const {
  require_mu(*model_, a, "tangent payload A", 1e-9);
  require_mu(*model_, b, "tangent payload B", 1e-9);
  return {base_, repr, a, b};
}

TangentVec TangentSpace::to_hat(const TangentVec& v) const {
  check_base(v);
  switch (v.repr) {
    case Repr::hat: return v;
    case Repr::tilde: return {base_, Repr::hat, op(ops_.S_inv, v.a), op(ops_.E_inv, v.b)};
    case Repr::sharp:
    case Repr::flat: return {base_, Repr::hat, v.a, op(ops_.E_inv, op(ops_.SJ_inv, v.b))};
  }
  return v;
}

TangentVec TangentSpace::from_hat(const TangentVec& v, Repr target) const {
  switch (target) {
    case Repr::hat: return v;
    case Repr::tilde: return {base_, target, op(ops_.S, v.a), op(ops_.E, v.b)};
    case Repr::sharp:
    case Repr::flat: return {base_, target, v.a, op(ops_.SJ, op(ops_.E, v.b))};
  }
  return v;
}

TangentVec TangentSpace::convert(const TangentVec& v, Repr target) const {
  check_base(v);
  if (v.repr == target) return v;
  if ((v.repr == Repr::sharp || v.repr == Repr::flat) && (target == Repr::sharp || target == Repr::flat))
    return {base_, target, v.a, v.b};
  return from_hat(to_hat(v), target);
}

std::array<Mat, 2> TangentSpace::J_hat(Structure s, const Mat& a, const Mat& b) const {
  const Mat seb = op(ops_.S_inv, op(ops_.E, b));
  switch (s) {
    case Structure::J1: return {-seb, op(ops_.E_inv, op(ops_.S, a))};
    case Structure::J2: return {-op(ops_.J, seb), -op(ops_.E_inv, op(ops_.S, op(ops_.J, a)))};
    case Structure::J3: return {op(ops_.J, a), -op(ops_.E_inv, op(ops_.S, op(ops_.J, seb)))};
  }
  return {a, b};
}

std::array<Mat, 2> TangentSpace::J_tilde(Structure s, const Mat& a, const Mat& b) const {
  const Mat sjs = ops_.S * ops_.J * ops_.S_inv;
  switch (s) {
    case Structure::J1: return {-b, a};
    case Structure::J2: return {-op(sjs, b), -op(sjs, a)};
    case Structure::J3: return {op(sjs, a), -op(sjs, b)};
  }
  return {a, b};
}

std::array<Mat, 2> TangentSpace::J_sharp(Structure s, const Mat& a, const Mat& b) const {
  switch (s) {
    case Structure::J1: return {-op(ops_.S_inv, op(ops_.SJ_inv, b)), op(ops_.SJ, op(ops_.S, a))};
    case Structure::J2:
      return {-op(ops_.J, op(ops_.S_inv, op(ops_.SJ_inv, b))), -op(ops_.SJ, op(ops_.S, op(ops_.J, a)))};
    case Structure::J3: return {op(ops_.J, a), -op(ops_.J, b)};
  }
  return {a, b};
}

TangentVec TangentSpace::apply_J(Structure s, const TangentVec& v) const {
  check_base(v);
  std::array<Mat, 2> r;
  switch (v.repr) {
    case Repr::hat: r = J_hat(s, v.a, v.b); break;
    case Repr::tilde: r = J_tilde(s, v.a, v.b); break;
    case Repr::sharp:
    case Repr::flat: r = J_sharp(s, v.a, v.b); break;
  }
  return {base_, v.repr, r[0], r[1]};
}

TangentVec TangentSpace::apply_J(const Triple& t, const TangentVec& v) const {
  const TangentVec j1 = apply_J(Structure::J1, v), j2 = apply_J(Structure::J2, v),
                   j3 = apply_J(Structure::J3, v);
  return {base_, v.repr, t.l1 * j1.a + t.l2 * j2.a + t.l3 * j3.a, t.l1 * j1.b + t.l2 * j2.b + t.l3 * j3.b};
}

FormValues TangentSpace::forms(const TangentVec& v, const TangentVec& w) const {
  check_base(v);
  check_base(w);
  const TangentVec ww = convert(w, v.repr);
  const Mat &a1 = v.a, &b1 = v.b, &a2 = ww.a, &b2 = ww.b;
  const BaseOps& o = ops_;
  FormValues f;
  switch (v.repr) {
    case Repr::hat: {
      const Mat eb1 = op(o.E, b1), eb2 = op(o.E, b2), sa1 = op(o.S, a1), sa2 = op(o.S, a2);
      f.metric = -k(op(o.SJ, sa1), a2) - k(op(o.SJ, op(o.S_inv, eb1)), eb2);
      f.w1 = -k(a1, op(o.SJ, eb2)) + k(op(o.SJ, eb1), a2);
      f.w2 = k(op(o.J, sa1), eb2) - k(eb1, op(o.J, sa2));
      f.w3 = k(op(o.J, eb1), eb2) - k(op(o.J, sa1), sa2);
      break;
    }
    case Repr::tilde: {
      const Mat t = o.SJ * o.S_inv;
      f.metric = -k(op(t, a1), a2) - k(op(t, b1), b2);
      f.w1 = k(op(t, b1), a2) - k(a1, op(t, b2));
      f.w2 = k(op(o.J, a1), b2) - k(b1, op(o.J, a2));
      f.w3 = k(op(o.J, b1), b2) - k(op(o.J, a1), a2);
      break;
    }
    case Repr::sharp: {
      const Mat ss = o.SJ * o.S, si = o.SJ_inv * o.S_inv;
      f.metric = -k(op(ss, a1), a2) - k(op(si, b1), b2);
      f.w1 = -k(a1, b2) + k(b1, a2);
      f.w2 = -k(a1, op(o.J, b2)) + k(op(o.J, b1), a2);
      f.w3 = k(op(si, op(o.J, b1)), b2) - k(op(ss, op(o.J, a1)), a2);
      break;
    }
    case Repr::flat: {
      const AlgebraModel& md = *model_;
      const Mat ss = o.SJ * o.S, si = o.SJ_inv * o.S_inv;
      const Mat a1p = md.project(Space::m_plus, a1), b1p = md.project(Space::m_plus, b1);
      const Mat a2m = md.project(Space::m_minus, a2), b2m = md.project(Space::m_minus, b2);
      f.metric = -2.0 * (kc(op(ss, a1p), a2m) + kc(op(si, b1p), b2m)).real();
      f.w1 = 2.0 * (kc(b1p, a2m) - kc(a1p, b2m)).real();
      f.w2 = -2.0 * (kc(a1p, b2m) + kc(b1p, a2m)).imag();
      f.w3 = 2.0 * (kc(op(ss, a1p), a2m) - kc(op(si, b1p), b2m)).imag();
      break;
    }
  }
  return f;
}

FormValues TangentSpace::forms_alt(const TangentVec& v, const TangentVec& w) const {
  FormValues f = forms(v, w);
  const TangentVec ww = convert(w, v.repr);
  const Mat &a1 = v.a, &b1 = v.b, &a2 = ww.a, &b2 = ww.b;
  const BaseOps& o = ops_;
  switch (v.repr) {
    case Repr::hat: {
      const Mat eb1 = op(o.E, b1), eb2 = op(o.E, b2), sa1 = op(o.S, a1), sa2 = op(o.S, a2);
      const Mat sj = o.S * o.J;
      f.metric = -(ku(sa1, op(sj, a2)) + ku(eb1, op(sj * o.S_inv, eb2)));
      f.w1 = ku(eb1, op(sj, a2)) - ku(a1, op(sj, eb2));
      f.w2 = ku(sa1, eb2) + ku(eb1, sa2);
      f.w3 = ku(eb1, eb2) - ku(sa1, sa2);
      break;
    }
    case Repr::tilde: {
      const Mat sjs = o.S * o.J * o.S_inv;
      f.metric = -(ku(a1, op(sjs, a2)) + ku(b1, op(sjs, b2)));
      f.w1 = ku(b1, op(sjs, a2)) - ku(op(o.S_inv, a1), op(o.S * o.J, b2));
      const cplx hol = -kI * kc(model_->upsilon(), bracket(a1 + kI * b1, a2 + kI * b2));
      f.w2 = hol.real();
      f.w3 = hol.imag();
      break;
    }
    case Repr::sharp:
    case Repr::flat: {
      f.w2 = ku(a1, b2) + ku(b1, a2);
      f.w3 = ku(op(o.SJ_inv, b1), op(o.SJ_inv, b2)) - ku(op(o.S, a1), op(o.S, a2));
      if (v.repr == Repr::flat) {
        const AlgebraModel& md = *model_;
        const cplx hol = 2.0 * kc(md.project(Space::m_minus, b1), md.project(Space::m_plus, a2)) -
                         2.0 * kc(md.project(Space::m_plus, a1), md.project(Space::m_minus, b2));
        f.w1 = hol.real();
        f.w2 = hol.imag();
      }
      break;
    }
  }
  return f;
}

cplx TangentSpace::hol_form(HolForm which, const TangentVec& v, const TangentVec& w) const {
  const FormValues f = forms(v, w);
  return which == HolForm::w2_plus_i_w3 ? cplx(f.w2, f.w3) : cplx(f.w1, f.w2);
}

Mat TangentSpace::generator(const TangentVec& v) const {
  const TangentVec t = convert(v, Repr::tilde);
  return conj_by(gexp_, t.a + kI * t.b);
}

Mat TangentSpace::hat_generator(const TangentVec& v) const {
  const TangentVec h = convert(v, Repr::hat);
  return conj_by(base_.g, h.a + kI * conj_by(expm(base_.z), op(ops_.E, h.b)));
}

Mat TangentSpace::ambient(const TangentVec& v) const { return bracket(generator(v), m_); }

TangentVec TangentSpace::from_ambient(const Mat& v) const {
  const Mat u = conj_by(gexp_.inverse(), v);
  const Mat w = model_->J(model_->project(Space::m, u));
  return {base_, Repr::tilde, model_->project(Space::mu, re_part(w)),
          model_->project(Space::mu, -kI * (0.5 * (w + w.adjoint())))};
}

cplx TangentSpace::lambda_complex(const TangentVec& v) const {
  const TangentVec f = convert(v, Repr::flat);
  return 2.0 * kc(model_->project(Space::m_plus, f.a), wm_);
}

double TangentSpace::lambda_real(const TangentVec& v) const {
  const TangentVec s = convert(v, Repr::sharp);
  return k(s.a, w_);
}

cplx kks_free(const AlgebraModel& model, const Mat& m, const Mat& xi1, const Mat& xi2) {
  return -kI * model.killing(m, bracket(xi1, xi2));
}

double potential_phi(const AlgebraModel& model, const OrbitPoint& pt) {
  return model.killing(conj_by(expm(pt.z), model.upsilon()), model.upsilon()).real();
}

double potential_phi_prime(const AlgebraModel& model, const CotangentPoint& cp) {
  const CotangentPoint s = cp.flavor == Flavor::flat ? theta_map(model, cp) : cp;
  const Mat y = p_map(model, 0.5 * p_inv(model, model.project(Space::m0, kI * s.w)));
  return -2.0 * model.killing(y, y).real();
}

OrbitPoint random_orbit_point(const AlgebraModel& model, Rng& rng, double scale) {
  return {random_gu(model, rng), random_m0(model, rng, scale)};
}

}  // namespace hksym
