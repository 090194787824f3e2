#pragma once

#include "hksym/operators.hpp"

#include <array>

namespace hksym {

/// Ad_g Ad_{exp Z} Upsilon with g unitary of determinant one and Z in m_0.
struct OrbitPoint {
  Mat g;
  Mat z;
};

enum class Flavor { sharp, flat };

/// [g, W] with W in m_u (sharp) or [g, W-] with W- in m- (flat).
struct CotangentPoint {
  Mat g;
  Mat w;
  Flavor flavor = Flavor::sharp;
};

enum class Repr { tilde, hat, sharp, flat };
const char* repr_name(Repr r);

/// Payloads A, B in m_u; the base is always carried as an orbit point and the
/// cotangent coordinates are read through Phi (and Theta for flat).
struct TangentVec {
  OrbitPoint base;
  Repr repr = Repr::hat;
  Mat a, b;
};

enum class Structure { J1, J2, J3 };

struct Triple {
  double l1 = 0, l2 = 0, l3 = 1;
};

struct FormValues {
  double metric = 0, w1 = 0, w2 = 0, w3 = 0;
  double omega(const Triple& t) const { return t.l1 * w1 + t.l2 * w2 + t.l3 * w3; }
};

enum class HolForm { w2_plus_i_w3, w1_plus_i_w2 };

Mat realize(const AlgebraModel& model, const OrbitPoint& pt);
/// Minimal-polynomial test for membership in the orbit of Upsilon.
bool on_orbit(const AlgebraModel& model, const Mat& m, double tol = 1e-9);
/// Closed-form decomposition of an orbit element; throws if M is off the orbit.
OrbitPoint decompose(const AlgebraModel& model, const Mat& m);

/// Parameters of Ad_{R(s) D(c) H(r)} Upsilon in su(1,1), up to the K_0 phase D(a) in front.
struct Sl2Params {
  double s = 0, c = 0, r = 0, a = 0;
  OrbitPoint point;
};
Sl2Params decompose_sl2(const AlgebraModel& model, const Mat& m);
/// R(s) D(c) H(r) as used in the display of K_0-orbit representatives.
Mat sl2_rotation(double s);
Mat sl2_phase(double c);
Mat sl2_boost(double r);

CotangentPoint phi_map(const AlgebraModel& model, const OrbitPoint& pt);
OrbitPoint phi_inv(const AlgebraModel& model, const CotangentPoint& cp);
/// [g, Z] in the trivial identification.
CotangentPoint phi_triv(const AlgebraModel& model, const OrbitPoint& pt);
/// Flat to sharp. For a non-unitary g the factor g = g_u q is taken first.
CotangentPoint theta_map(const AlgebraModel& model, const CotangentPoint& flat);
CotangentPoint theta_inv(const AlgebraModel& model, const CotangentPoint& sharp);
/// g = g_u q with g_u in SU(n) and q block lower triangular.
std::pair<Mat, Mat> unitary_factor(const AlgebraModel& model, const Mat& g);

/// Tangent-space calculus at one base point; operator matrices are computed once.
class TangentSpace {
 public:
  TangentSpace(const AlgebraModel& model, OrbitPoint base);

  const AlgebraModel& model() const { return *model_; }
  const OrbitPoint& base() const { return base_; }
  const BaseOps& ops() const { return ops_; }
  /// Sharp fibre coordinate W = -i P(Z) and its m- part.
  const Mat& w() const { return w_; }
  const Mat& w_minus() const { return wm_; }
  const Mat& point() const { return m_; }

  TangentVec make(Repr repr, const Mat& a, const Mat& b) const;
  TangentVec convert(const TangentVec& v, Repr target) const;
  TangentVec apply_J(Structure s, const TangentVec& v) const;
  TangentVec apply_J(const Triple& t, const TangentVec& v) const;

  /// Metric and the three Kahler forms from the native formulas of v's representation.
  FormValues forms(const TangentVec& v, const TangentVec& w) const;
  /// The alternative printed formulas, where they exist; otherwise the native ones.
  FormValues forms_alt(const TangentVec& v, const TangentVec& w) const;
  cplx hol_form(HolForm which, const TangentVec& v, const TangentVec& w) const;

  /// xi in g with V = [xi, M]; the tilde generator Ad_{g exp Z}(A + iB).
  Mat generator(const TangentVec& v) const;
  /// Hat generator Ad_g(A + i Ad_{exp Z} E_Z B).
  Mat hat_generator(const TangentVec& v) const;
  Mat ambient(const TangentVec& v) const;
  /// Tilde vector whose ambient image is V.
  TangentVec from_ambient(const Mat& v) const;

  /// 2 kappa(A+, W-) on flat vectors.
  cplx lambda_complex(const TangentVec& v) const;
  /// kappa(A, W) on sharp vectors.
  double lambda_real(const TangentVec& v) const;

  Mat op(const Mat& o, const Mat& x) const { return apply_op(*model_, o, x); }

 private:
  void check_base(const TangentVec& v) const;
  TangentVec to_hat(const TangentVec& v) const;
  TangentVec from_hat(const TangentVec& v, Repr target) const;
  std::array<Mat, 2> J_hat(Structure s, const Mat& a, const Mat& b) const;
  std::array<Mat, 2> J_tilde(Structure s, const Mat& a, const Mat& b) const;
  std::array<Mat, 2> J_sharp(Structure s, const Mat& a, const Mat& b) const;
  double k(const Mat& x, const Mat& y) const { return model_->killing(x, y).real(); }
  cplx kc(const Mat& x, const Mat& y) const { return model_->killing(x, y); }
  double ku(const Mat& x, const Mat& y) const { return kc(model_->upsilon(), bracket(x, y)).real(); }

  const AlgebraModel* model_;
  OrbitPoint base_;
  BaseOps ops_;
  Mat w_, wm_, m_, gexp_;
};

Triple sphere_triple(cplx lambda);

/// -i kappa(M, [xi1, xi2]).
cplx kks_free(const AlgebraModel& model, const Mat& m, const Mat& xi1, const Mat& xi2);

/// Re kappa(Ad_{exp Z} Upsilon, Upsilon).
double potential_phi(const AlgebraModel& model, const OrbitPoint& pt);
/// -2 kappa(Y, Y) with Y = P(P^{-1}(iW)/2), on sharp points.
double potential_phi_prime(const AlgebraModel& model, const CotangentPoint& cp);

OrbitPoint random_orbit_point(const AlgebraModel& model, Rng& rng, double scale = 0.3);

}  // namespace hksym
