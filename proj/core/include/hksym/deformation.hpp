#pragma once

#include "hksym/orbit.hpp"

#include <vector>

namespace hksym {

struct SphereParam {
  cplx lambda = 0.0;
  bool infinite = false;
  Triple triple;
};
SphereParam sphere_param(cplx lambda);
SphereParam sphere_param_infinity();

/// lambda (1 + |lambda|) / (|lambda| (1 - |lambda|)); throws for lambda = 0 or ||lambda| - 1| <= 1e-6.
cplx nu(cplx lambda);

/// The coordinate formula for Ad_g Ad_{exp Z} Upsilon -> Ad_g Ad_{exp t_lambda Z} Upsilon.
OrbitPoint T_lambda(const AlgebraModel& model, cplx lambda, const OrbitPoint& pt);
OrbitPoint T_lambda_inv(const AlgebraModel& model, cplx lambda, const OrbitPoint& pt);
/// Ad_g Ad_{exp t_lambda Z} Upsilon straight from complex exponentials.
Mat T_lambda_realized(const AlgebraModel& model, cplx lambda, const OrbitPoint& pt);
/// Phi o T_lambda o Phi^{-1} on sharp points.
CotangentPoint T_lambda_cotangent(const AlgebraModel& model, cplx lambda, const CotangentPoint& cp);

/// Generator xi of dT_lambda(v) for hat v: V = [xi, M'] with M' = Ad_{g exp X} Upsilon, X = t_lambda Z.
struct Pushforward {
  Mat xi;
  Mat image;  // M'
};
Pushforward pushforward(const AlgebraModel& model, cplx lambda, const TangentVec& hat);

enum class DiffMethod { finite_diff, pushforward };
/// Differential of T_lambda; the result is a tilde vector at T_lambda(base).
TangentVec dT_lambda(const AlgebraModel& model, cplx lambda, const TangentVec& v, DiffMethod method,
                     double h = 1e-5);
/// Ambient image d/dt realize(T_lambda(curve)) by central differences.
Mat dT_lambda_fd_ambient(const AlgebraModel& model, cplx lambda, const TangentVec& v, double h = 1e-5);

enum class Theorem { intertwine_J, hol_symplectic_pullback, omega3_pullback, abcd_solution };
const char* theorem_name(Theorem t);

/// Checks one deformation statement on a frame of hat vectors at pt.
/// intertwine_J reports a closed-form check (tol) and a finite-difference one (tol_fd).
Report verify_theorem(const AlgebraModel& model, Theorem id, cplx lambda, const OrbitPoint& pt,
                      const std::vector<TangentVec>& frame, double tol, double tol_fd = 1e-5);

/// Both sides of the SL(2) matrix identity behind the coordinate formula.
std::pair<Mat, Mat> sl2_identity_sides(double c, cplx lambda);
/// s and r of the coordinate formula.
std::pair<double, double> coordinate_sr(double c, double abs_lambda);
/// Residuals of cosh2c = cosh2r cos2s, the sinh relation for r, and the one for s.
std::array<double, 3> abc_residuals(double c, double abs_lambda);

/// Max residual of I + i l3 J = t_lambda(l1 - l2 J) over a basis of m.
double t_identity_residual(const AlgebraModel& model, cplx lambda);
/// Max residual of t_nu^{-1} - t_conj(nu) = 2i(l1 J + l2)/l3 over a basis of m.
double t_nu_identity_residual(const AlgebraModel& model, cplx lambda);

}  // namespace hksym
