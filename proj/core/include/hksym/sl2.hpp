#pragma once

#include "hksym/orbit.hpp"

#include <string>
#include <vector>

namespace hksym {

/// M = (i/2) [[A, B], [C, -A]] with A^2 + BC = 1.
struct Sl2Coords {
  cplx a, b, c;
};
Sl2Coords sl2_coords(const Mat& m);
Mat sl2_matrix(cplx a, cplx b, cplx c);

/// (2|A|^2 - |B|^2 - |C|^2)/2; throws std::invalid_argument off the orbit.
double f_invariant(const Mat& m, double tol = 1e-9);

enum class Sl2Class {
  O0_plus,
  O0_minus,
  closed_interior_plus,   // -1 < f < 1, Re A > 0
  closed_interior_minus,  // -1 < f < 1, Re A < 0
  closed_f_minus1,
  nonclosed_pp,  // f = -1, Re A > 0, |B| > |C|
  nonclosed_pm,  // Re A > 0, |B| < |C|
  nonclosed_mp,  // Re A < 0, |B| > |C|
  nonclosed_mm,  // Re A < 0, |B| < |C|
  closed_below_plus,   // f < -1, |B| > |C|
  closed_below_minus,  // f < -1, |B| < |C|
  boundary
};
const char* sl2_class_name(Sl2Class c);

struct Sl2OrbitClass {
  double f = 0;
  Sl2Class tag = Sl2Class::boundary;
  double re_a = 0;
  double b_minus_c = 0;
  bool closed() const;
};
Sl2OrbitClass classify_orbit(const Mat& m, double tol = 1e-9);

enum class CriticalStructure { J3, J1 };

struct CriticalRow {
  std::string family;
  double s = 0, c = 0, r = 0;
  Mat m;
  double f = 0;
  double f_predicted = 0;  // value implied by the realized matrix family
  double f_stated = 0;     // value as printed for the family; differs for the second J1 ray
};

/// J3: north and south cotangent fibres (s = 0 or pi/2, c = 0, r on the grid) and the equator point.
/// J1: the r = 0 sphere over the s grid and the ray s = pi/4, c = pi/2 over the r grid.
std::vector<CriticalRow> critical_set(const AlgebraModel& model, CriticalStructure which,
                                      const std::vector<double>& s_grid, const std::vector<double>& r_grid);

struct PushforwardRow {
  double r = 0, c = 0;
  double s_prime = 0, r_prime = 0;  // closed forms
  double f_closed = 0;              // closed form of f
  Mat m;                            // computed image
  double f = 0;                     // f of the computed image
  double point_residual = 0;        // computed image against Ad_{D(c) R'(s') H(r')} Upsilon
  double display_residual = 0;      // entrywise display against the same element
  Sl2OrbitClass cls;
};

/// Image of Ad_{D(c) H(r)} Upsilon under T_lambda o T_nu^{-1}, for 0 < |lambda| < 1.
PushforwardRow pushforward_critical(const AlgebraModel& model, cplx lambda, double r, double c = 0.0);
/// Second-type equator points Ad_{R(pi/4) D(c)} Upsilon under the same map.
double pushforward_equator_residual(const AlgebraModel& model, cplx lambda, double c);

double pushforward_f_closed(double abs_lambda, double r);
/// Smallest r > 0 with f = -1 on the pushforward family (bisection on the closed form).
double f_minus1_crossing(double abs_lambda);

}  // namespace hksym
