#include "hksym/deformation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hksym {

SphereParam sphere_param(cplx lambda) { return {lambda, false, sphere_triple(lambda)}; }

SphereParam sphere_param_infinity() { return {0.0, true, Triple{0.0, 0.0, -1.0}}; }

cplx nu(cplx lambda) {
  const double a = std::abs(lambda);
  if (a == 0.0) throw std::invalid_argument("nu: lambda must be nonzero");
  if (std::abs(1.0 - a) <= 1e-6) throw std::invalid_argument("nu: unit-circle lambda rejected");
  return lambda * (1.0 + a) / (a * (1.0 - a));
}

std::pair<double, double> coordinate_sr(double c, double abs_lambda) {
  const double a = abs_lambda;
  return {0.5 * std::atan(0.5 * (1.0 / a - a) * std::tanh(2.0 * c)),
          0.5 * std::asinh(0.5 * (1.0 / a + a) * std::sinh(2.0 * c))};
}

OrbitPoint T_lambda(const AlgebraModel& model, cplx lambda, const OrbitPoint& pt) {
  if (lambda == cplx(0.0)) throw std::invalid_argument("T_lambda: lambda must be nonzero");
  const A0Coords red = reduce_to_a0(model, pt.z);
  const double a = std::abs(lambda);
  const cplx u2 = lambda / a;
  OrbitPoint out{pt.g * red.k, model.zero()};
  const SOSystem& so = model.so();
  for (int j = 0; j < so.rank; ++j) {
    const auto [s, r] = coordinate_sr(red.coeffs[j], a);
    out.g = out.g * expm(kI * s * t_lambda(model, u2, so.y[j]));
    out.z += r * t_lambda(model, u2, so.x[j]);
  }
  return out;
}

OrbitPoint T_lambda_inv(const AlgebraModel& model, cplx lambda, const OrbitPoint& pt) {
  if (lambda == cplx(0.0)) throw std::invalid_argument("T_lambda_inv: lambda must be nonzero");
  const A0Coords red = reduce_to_a0(model, pt.z);
  const double a = std::abs(lambda);
  const cplx u2 = lambda / a;
  // exp(phi Upsilon) acts as t_{u^2} when e^{i phi} = u^2.
  const Mat kappa = expm(std::arg(u2) * model.upsilon());
  Mat g = pt.g * red.k;
  OrbitPoint out{g, model.zero()};
  const SOSystem& so = model.so();
  for (int j = 0; j < so.rank; ++j) {
    // invert the r relation, which is monotone in c
    const double c = 0.5 * std::asinh(2.0 * std::sinh(2.0 * red.coeffs[j]) / (1.0 / a + a));
    const double s = coordinate_sr(c, a).first;
    out.g = out.g * expm(-kI * s * so.y[j]);
    out.z += c * so.x[j];
  }
  out.g = out.g * kappa.adjoint();
  return out;
}

Mat T_lambda_realized(const AlgebraModel& model, cplx lambda, const OrbitPoint& pt) {
  return conj_by(pt.g * expm(t_lambda(model, lambda, pt.z)), model.upsilon());
}

CotangentPoint T_lambda_cotangent(const AlgebraModel& model, cplx lambda, const CotangentPoint& cp) {
  if (lambda == cplx(0.0)) throw std::invalid_argument("T_lambda_cotangent: lambda must be nonzero");
  const CotangentPoint sp = cp.flavor == Flavor::flat ? theta_map(model, cp) : cp;
  require_mu(model, sp.w, "T_lambda_cotangent");
  const A0Coords red = reduce_to_a0(model, model.project(Space::m0, kI * sp.w));
  const double a = std::abs(lambda);
  const cplx u2 = lambda / a;
  CotangentPoint out{sp.g * red.k, model.zero(), Flavor::sharp};
  Mat reduced = model.zero();
  const SOSystem& so = model.so();
  for (int j = 0; j < so.rank; ++j) {
    const double d = -red.coeffs[j];
    const double s = 0.5 * std::atan((1.0 / a - a) * (-d / std::sqrt(1.0 + 4.0 * d * d)));
    out.g = out.g * expm(kI * s * t_lambda(model, u2, so.y[j]));
    reduced += kI * d * so.x[j];
  }
  out.w = 0.5 * (t_lambda(model, lambda, reduced) + t_lambda(model, 1.0 / std::conj(lambda), reduced));
  return out;
}

Pushforward pushforward(const AlgebraModel& model, cplx lambda, const TangentVec& hat) {
  if (hat.repr != Repr::hat) throw std::invalid_argument("pushforward expects a hat vector");
  const Mat x = t_lambda(model, lambda, hat.base.z);
  const Mat ex = expm(x);
  const Mat eb = series_apply(SeriesKind::E, x, t_lambda(model, lambda, hat.b));
  Pushforward out;
  out.xi = conj_by(hat.base.g, hat.a + kI * conj_by(ex, eb));
  out.image = conj_by(hat.base.g * ex, model.upsilon());
  return out;
}

Mat dT_lambda_fd_ambient(const AlgebraModel& model, cplx lambda, const TangentVec& v, double h) {
  if (v.repr != Repr::hat) throw std::invalid_argument("dT_lambda expects a hat vector");
  auto at = [&](double t) {
    const OrbitPoint q{v.base.g * expm(t * v.a), v.base.z + t * kI * v.b};
    return realize(model, T_lambda(model, lambda, q));
  };
  return (at(h) - at(-h)) / (2.0 * h);
}

TangentVec dT_lambda(const AlgebraModel& model, cplx lambda, const TangentVec& v, DiffMethod method,
                     double h) {
  const TangentSpace img(model, T_lambda(model, lambda, v.base));
  if (method == DiffMethod::finite_diff) return img.from_ambient(dT_lambda_fd_ambient(model, lambda, v, h));
  const Pushforward pf = pushforward(model, lambda, v);
  return img.from_ambient(bracket(pf.xi, pf.image));
}

const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::intertwine_J: return "intertwine_J";
    case Theorem::hol_symplectic_pullback: return "hol_symplectic_pullback";
    case Theorem::omega3_pullback: return "omega3_pullback";
    case Theorem::abcd_solution: return "abcd_solution";
  }
  return "?";
}

Report verify_theorem(const AlgebraModel& model, Theorem id, cplx lambda, const OrbitPoint& pt,
                      const std::vector<TangentVec>& frame, double tol, double tol_fd) {
  Report rep;
  rep.suite = "deformation";
  const std::string lbl = model.label();
  const std::string name = theorem_name(id);
  Tally main, fd;
  try {
    const TangentSpace ts(model, pt);
    const Triple tri = sphere_triple(lambda);
    std::vector<TangentVec> hats;
    for (const auto& v : frame) hats.push_back(ts.convert(v, Repr::hat));

    switch (id) {
      case Theorem::intertwine_J: {
        const TangentSpace img(model, T_lambda(model, lambda, pt));
        for (const auto& v : hats) {
          const TangentVec jv = ts.apply_J(tri, v);
          const Pushforward pv = pushforward(model, lambda, v), pj = pushforward(model, lambda, jv);
          main.add(residual(bracket(pj.xi, pj.image), bracket(Mat(kI * pv.xi), pv.image)));
          const TangentVec t = img.from_ambient(dT_lambda_fd_ambient(model, lambda, v));
          const Mat rhs = img.ambient(img.apply_J(Structure::J1, t));
          fd.add(residual(dT_lambda_fd_ambient(model, lambda, jv), rhs));
        }
        rep.add(main.finish(name + "_closed_form", "dT conjugates J_lambda to J1 (closed forms)", tol, lbl));
        rep.add(fd.finish(name + "_finite_diff", "dT conjugates J_lambda to J1 (finite differences)", tol_fd, lbl));
        return rep;
      }
      case Theorem::hol_symplectic_pullback: {
        for (size_t i = 0; i < hats.size(); ++i)
          for (size_t j = i + 1; j < hats.size(); ++j) {
            const Pushforward p1 = pushforward(model, lambda, hats[i]), p2 = pushforward(model, lambda, hats[j]);
            const cplx lhs = kks_free(model, p1.image, p1.xi, p2.xi);
            const FormValues f = ts.forms(hats[i], hats[j]);
            const cplx rhs = 0.5 * kI * (lambda - 1.0 / lambda) * f.w1 + 0.5 * (lambda + 1.0 / lambda) * f.w2 +
                             kI * f.w3;
            main.add(residual(lhs, rhs));
          }
        rep.add(main.finish(name, "pullback of the holomorphic form under T_lambda", tol, lbl));
        return rep;
      }
      case Theorem::omega3_pullback: {
        const cplx n = nu(lambda);
        const double a2 = std::norm(lambda);
        const double scale = (1.0 - a2) / (1.0 + a2);
        for (size_t i = 0; i < hats.size(); ++i)
          for (size_t j = i + 1; j < hats.size(); ++j) {
            const Pushforward p1 = pushforward(model, n, hats[i]), p2 = pushforward(model, n, hats[j]);
            const double w3 = kks_free(model, p1.image, p1.xi, p2.xi).imag();
            main.add(residual(scale * w3, ts.forms(hats[i], hats[j]).omega(tri)));
          }
        rep.add(main.finish(name, "scaled pullback of omega3 under T_nu", tol, lbl));
        return rep;
      }
      case Theorem::abcd_solution: {
        const BaseOps& o = ts.ops();
        const Mat x = t_lambda(model, lambda, pt.z);
        const Mat sx = series_op(model, SeriesKind::S, x), ex = series_op(model, SeriesKind::E, x);
        auto ap = [&](const Mat& op, const Mat& y) { return apply_op(model, op, y); };
        for (const auto& v : hats) {
          const Mat seb = ap(o.S_inv, ap(o.E, v.b));
          const Mat c = -tri.l1 * seb - tri.l2 * ap(o.J, seb) + tri.l3 * ap(o.J, v.a);
          const Mat tinv_d = tri.l1 * ap(o.E_inv, ap(o.S, v.a)) - tri.l2 * ap(o.E_inv, ap(o.S, ap(o.J, v.a))) -
                             tri.l3 * ap(o.E_inv, ap(o.S, ap(o.J, seb)));
          const Mat d = t_lambda(model, lambda, tinv_d);
          const Mat lhs = ap(sx, c) + kI * ap(ex, d);
          const Mat rhs = kI * ap(sx, v.a) - ap(ex, t_lambda(model, lambda, v.b));
          main.add(residual(lhs, rhs));
        }
        rep.add(main.finish(name, "C and D solve the tangent equation", tol, lbl));
        return rep;
      }
    }
  } catch (const std::exception&) {
    main.add(std::numeric_limits<double>::quiet_NaN());
    rep.add(main.finish(name, "evaluation failed", tol, lbl));
  }
  return rep;
}

std::pair<Mat, Mat> sl2_identity_sides(double c, cplx lambda) {
  const double a = std::abs(lambda);
  const cplx u2 = lambda / a;
  const auto [s, r] = coordinate_sr(c, a);
  Mat h(2, 2), x1(2, 2), x2(2, 2), x3(2, 2);
  h << 1.0, 0.0, 0.0, -1.0;
  x1 << 0.0, c * lambda, c / lambda, 0.0;
  x2 << 0.0, -s * u2, s * std::conj(u2), 0.0;
  x3 << 0.0, r * u2, r * std::conj(u2), 0.0;
  return {conj_by(expm(x1), h), conj_by(expm(x2) * expm(x3), h)};
}

std::array<double, 3> abc_residuals(double c, double abs_lambda) {
  const double a = abs_lambda;
  const auto [s, r] = coordinate_sr(c, a);
  return {residual(std::cosh(2 * r) * std::cos(2 * s), std::cosh(2 * c)),
          residual(std::sinh(2 * r), 0.5 * (1 / a + a) * std::sinh(2 * c)),
          residual(std::cosh(2 * r) * std::sin(2 * s), 0.5 * (1 / a - a) * std::sinh(2 * c))};
}

double t_identity_residual(const AlgebraModel& model, cplx lambda) {
  const Triple t = sphere_triple(lambda);
  const Mat jop = op_matrix(model, [&](const Mat& w) { return model.J(w); });
  const Mat id = Mat::Identity(jop.rows(), jop.cols());
  const Mat lhs = id + kI * t.l3 * jop;
  const Mat rhs = t_lambda_op(model, lambda) * (t.l1 * id - t.l2 * jop);
  return residual(lhs, rhs);
}

double t_nu_identity_residual(const AlgebraModel& model, cplx lambda) {
  const Triple t = sphere_triple(lambda);
  const cplx n = nu(lambda);
  const Mat jop = op_matrix(model, [&](const Mat& w) { return model.J(w); });
  const Mat id = Mat::Identity(jop.rows(), jop.cols());
  const Mat lhs = t_lambda_op(model, 1.0 / n) - t_lambda_op(model, std::conj(n));
  const Mat rhs = 2.0 * kI * (t.l1 * jop + t.l2 * id) / t.l3;
  return residual(lhs, rhs);
}

}  // namespace hksym
