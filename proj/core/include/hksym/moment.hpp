#pragma once

#include "hksym/orbit.hpp"

#include <optional>

namespace hksym {

enum class MomentKind { mu1, mu2, mu3, mu_lambda };

/// mu_1 = Im(Ad_{g exp JZ} Upsilon), mu_2 = -Im M, mu_3 = Re M.
Mat mu_orbit(const AlgebraModel& model, MomentKind which, const OrbitPoint& pt);
/// The twisted-product formulas at a sharp point [g, W].
Mat mu_cotangent(const AlgebraModel& model, MomentKind which, const CotangentPoint& cp);
/// 2 Ad_g W- at a flat point.
Mat mu_hol_J3(const AlgebraModel& model, const CotangentPoint& flat);
/// -i mu_2 + mu_3, which is the inclusion of the orbit.
Mat mu_hol_J1(const AlgebraModel& model, const OrbitPoint& pt);
/// ((1-|l|^2)/(1+|l|^2)) Re(Ad_{g exp t_nu Z} Upsilon); rejects l = 0 and |l| near 1.
Mat mu_lambda(const AlgebraModel& model, cplx lambda, const OrbitPoint& pt);

/// Fundamental vector field of X in g_u at the base of ts, in hat coordinates.
TangentVec generator_hat(const TangentSpace& ts, const Mat& x);
/// Same in sharp coordinates.
TangentVec generator_sharp(const TangentSpace& ts, const Mat& x);

struct MomentTarget {
  MomentKind kind = MomentKind::mu3;
  cplx lambda = 0.5;
  bool cotangent = false;  // mu_1 through [g, W] and sharp curves
};

/// Which symplectic form the moment map is paired with; defaults to the matching one.
struct FormChoice {
  MomentKind kind;
  cplx lambda = 0.5;
};

/// kappa(d mu(v), X) against omega(v, eta_X) at random points, vectors and generators,
/// with d mu by central differences of step h.
Report verify_moment_equation(const AlgebraModel& model, const MomentTarget& target, int samples,
                              double tol, std::uint64_t seed,
                              const std::optional<OrbitPoint>& point = std::nullopt,
                              const std::optional<FormChoice>& form = std::nullopt, double h = 1e-5);

}  // namespace hksym
