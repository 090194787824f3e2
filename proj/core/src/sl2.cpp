#include "hksym/sl2.hpp"

#include "hksym/deformation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hksym {

Sl2Coords sl2_coords(const Mat& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("sl2_coords: expected a 2x2 matrix");
  const Mat x = -2.0 * kI * m;
  return {x(0, 0), x(0, 1), x(1, 0)};
}

Mat sl2_matrix(cplx a, cplx b, cplx c) {
  Mat x(2, 2);
  x << a, b, c, -a;
  return 0.5 * kI * x;
}

double f_invariant(const Mat& m, double tol) {
  const Sl2Coords k = sl2_coords(m);
  if (std::abs(k.a * k.a + k.b * k.c - 1.0) >= tol || std::abs(m.trace()) >= tol)
    throw std::invalid_argument("f_invariant: matrix is not on the orbit");
  return (2.0 * std::norm(k.a) - std::norm(k.b) - std::norm(k.c)) / 2.0;
}

const char* sl2_class_name(Sl2Class c) {
  switch (c) {
    case Sl2Class::O0_plus: return "O0_plus";
    case Sl2Class::O0_minus: return "O0_minus";
    case Sl2Class::closed_interior_plus: return "closed_interior_plus";
    case Sl2Class::closed_interior_minus: return "closed_interior_minus";
    case Sl2Class::closed_f_minus1: return "closed_f_minus1";
    case Sl2Class::nonclosed_pp: return "nonclosed_reA+_B>C";
    case Sl2Class::nonclosed_pm: return "nonclosed_reA+_B<C";
    case Sl2Class::nonclosed_mp: return "nonclosed_reA-_B>C";
    case Sl2Class::nonclosed_mm: return "nonclosed_reA-_B<C";
    case Sl2Class::closed_below_plus: return "closed_below_B>C";
    case Sl2Class::closed_below_minus: return "closed_below_B<C";
    case Sl2Class::boundary: return "boundary";
  }
  return "?";
}

bool Sl2OrbitClass::closed() const {
  switch (tag) {
    case Sl2Class::nonclosed_pp:
    case Sl2Class::nonclosed_pm:
    case Sl2Class::nonclosed_mp:
    case Sl2Class::nonclosed_mm:
    case Sl2Class::boundary: return false;
    default: return true;
  }
}

Sl2OrbitClass classify_orbit(const Mat& m, double tol) {
  Sl2OrbitClass out;
  out.f = f_invariant(m, tol);
  const Sl2Coords k = sl2_coords(m);
  out.re_a = k.a.real();
  out.b_minus_c = std::abs(k.b) - std::abs(k.c);
  const bool re_zero = std::abs(out.re_a) <= tol, bc_zero = std::abs(out.b_minus_c) <= tol;
  if (std::abs(out.f - 1.0) <= tol) {
    out.tag = re_zero ? Sl2Class::boundary : out.re_a > 0 ? Sl2Class::O0_plus : Sl2Class::O0_minus;
  } else if (out.f > -1.0 + tol) {
    out.tag = re_zero ? Sl2Class::boundary
                      : out.re_a > 0 ? Sl2Class::closed_interior_plus : Sl2Class::closed_interior_minus;
  } else if (out.f >= -1.0 - tol) {
    if (re_zero && bc_zero) {
      out.tag = Sl2Class::closed_f_minus1;
    } else if (re_zero || bc_zero) {
      out.tag = Sl2Class::boundary;
    } else if (out.re_a > 0) {
      out.tag = out.b_minus_c > 0 ? Sl2Class::nonclosed_pp : Sl2Class::nonclosed_pm;
    } else {
      out.tag = out.b_minus_c > 0 ? Sl2Class::nonclosed_mp : Sl2Class::nonclosed_mm;
    }
  } else {
    out.tag = bc_zero ? Sl2Class::boundary
                      : out.b_minus_c > 0 ? Sl2Class::closed_below_plus : Sl2Class::closed_below_minus;
  }
  return out;
}

namespace {

void require_sl2(const AlgebraModel& model) {
  if (model.p() != 1 || model.q() != 1) throw std::invalid_argument("the SL(2) example needs su(1,1)");
}

Mat star_point(const AlgebraModel& model, double s, double c, double r) {
  return conj_by(sl2_rotation(s) * sl2_phase(c) * sl2_boost(r), model.upsilon());
}

}  // namespace

std::vector<CriticalRow> critical_set(const AlgebraModel& model, CriticalStructure which,
                                      const std::vector<double>& s_grid, const std::vector<double>& r_grid) {
  require_sl2(model);
  const double pi = std::numbers::pi;
  std::vector<CriticalRow> rows;
  auto push = [&](std::string fam, double s, double c, double r, double pred, double stated) {
    CriticalRow row{std::move(fam), s, c, r, star_point(model, s, c, r), 0.0, pred, stated};
    row.f = f_invariant(row.m);
    rows.push_back(std::move(row));
  };
  if (which == CriticalStructure::J3) {
    for (double r : r_grid) {
      push("north_fibre", 0.0, 0.0, r, 1.0, 1.0);
      push("south_fibre", pi / 2, 0.0, r, 1.0, 1.0);
    }
    push("equator", pi / 4, 0.0, 0.0, -1.0, -1.0);
  } else {
    for (double s : s_grid) push("base_sphere", s, 0.0, 0.0, std::cos(4 * s), std::cos(4 * s));
    for (double r : r_grid) push("equator_ray", pi / 4, pi / 2, r, -std::cosh(4 * r), std::cosh(4 * r));
  }
  return rows;
}

double pushforward_f_closed(double a, double r) {
  const double t = std::tanh(2 * r), ch = std::cosh(2 * r);
  return 1.0 - t * t * (4 * a * a + (1 - a * a) * (1 - a * a) * ch * ch) / (2 * a * a);
}

PushforwardRow pushforward_critical(const AlgebraModel& model, cplx lambda, double r, double c) {
  require_sl2(model);
  const double a = std::abs(lambda);
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("pushforward_critical needs 0 < |lambda| < 1");
  PushforwardRow row;
  row.r = r;
  row.c = c;
  const double sh = std::sinh(2 * r), ch = std::cosh(2 * r);
  row.s_prime = 0.5 * std::atan(-sh * std::sqrt(ch * ch * (1 - a * a) * (1 - a * a) + 4 * a * a) / (2 * a));
  row.r_prime = 0.5 * std::asinh(0.5 * (1 / a - a) * sh);
  row.f_closed = pushforward_f_closed(a, r);

  const OrbitPoint src{sl2_phase(c), r * model.so().x[0]};
  const OrbitPoint img = T_lambda(model, lambda, T_lambda_inv(model, nu(lambda), src));
  row.m = realize(model, img);
  row.f = f_invariant(row.m, 1e-8);
  // R'(s) is the transpose rotation.
  const Mat predicted = conj_by(sl2_phase(c) * sl2_rotation(-row.s_prime) * sl2_boost(row.r_prime), model.upsilon());
  row.point_residual = residual(row.m, predicted);
  const double c2s = std::cos(2 * row.s_prime), s2s = std::sin(2 * row.s_prime);
  const double c2r = std::cosh(2 * row.r_prime), s2r = std::sinh(2 * row.r_prime);
  const cplx e = std::exp(2.0 * kI * c);
  const Mat display = sl2_matrix(c2s * c2r, -e * (s2r + s2s * c2r), std::conj(e) * (s2r - s2s * c2r));
  row.display_residual = residual(display, predicted);
  row.cls = classify_orbit(row.m, 1e-8);
  return row;
}

double pushforward_equator_residual(const AlgebraModel& model, cplx lambda, double c) {
  require_sl2(model);
  const OrbitPoint src{sl2_rotation(std::numbers::pi / 4) * sl2_phase(c), model.zero()};
  const OrbitPoint img = T_lambda(model, lambda, T_lambda_inv(model, nu(lambda), src));
  return residual(realize(model, img), realize(model, src));
}

double f_minus1_crossing(double a) {
  double lo = 0.0, hi = 1.0;
  while (pushforward_f_closed(a, hi) > -1.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pushforward_f_closed(a, mid) > -1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace hksym
