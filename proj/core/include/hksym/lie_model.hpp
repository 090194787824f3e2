#pragma once

#include "hksym/linalg.hpp"
#include "hksym/report.hpp"
#include "hksym/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hksym {

enum class Space { k, m, m_plus, m_minus, g0, gu, k0, m0, mu };

/// Strongly orthogonal sl2-triples e_j = E_{j,p+j}, j < rank, plus the derived elements.
struct SOSystem {
  int rank = 0;
  std::vector<Mat> e, f, h, x, y, upsilon_psi;
  Mat upsilon_prime;
};

/// sl(n,C) with the involutions fixing su(n) and su(p,q), the element Upsilon and
/// the Killing form 2n tr(XY).
class AlgebraModel {
 public:
  AlgebraModel(int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  int n() const { return p_ + q_; }
  int rank() const { return so_.rank; }
  /// Complex dimension of m (= real dimension of m_0).
  int dim_m() const { return 2 * p_ * q_; }
  std::string label() const;

  const Mat& eta() const { return eta_; }
  const Mat& upsilon() const { return upsilon_; }
  double killing_scale() const { return 2.0 * n(); }
  const SOSystem& so() const { return so_; }

  Mat zero() const { return Mat::Zero(n(), n()); }
  Mat identity() const { return Mat::Identity(n(), n()); }

  Mat theta(const Mat& x) const { return -x.adjoint(); }
  Mat sigma(const Mat& x) const { return -eta_ * x.adjoint() * eta_; }
  Mat sigma_theta(const Mat& x) const { return eta_ * x * eta_; }

  Mat project(Space s, const Mat& x) const;
  cplx killing(const Mat& x, const Mat& y) const { return killing_scale() * (x * y).trace(); }
  /// tr(ad_X ad_Y) summed over the E_ij basis of gl(n); ad kills the centre,
  /// so this is the trace over sl(n).
  cplx killing_ad(const Mat& x, const Mat& y) const;

  /// ad_Upsilon on m; throws std::invalid_argument if W has a k-component above 1e-10.
  Mat J(const Mat& w) const;

  /// Coordinates of the m-part of X in the elementary basis: m+ entries first
  /// (row-major over the p x q block), then m- entries (row-major over q x p).
  Vec coords_m(const Mat& x) const;
  Mat from_coords_m(const Vec& v) const;
  /// The x/y-completed real basis of m_0: X_ab = E_{a,p+b}+E_{p+b,a}, Y_ab = i(E_{a,p+b}-E_{p+b,a}).
  std::vector<Mat> basis_m0() const;

  /// Distance of X from the subspace s, measured as ||X - proj_s X||.
  double distance(Space s, const Mat& x) const { return (x - project(s, x)).norm(); }

 private:
  int p_, q_;
  Mat eta_, upsilon_;
  SOSystem so_;
};

AlgebraModel build_model(int p, int q);

/// exp as a group element (scaling and squaring).
inline Mat matrix_exp(const Mat& x) { return expm(x); }
/// Ad_g X.
inline Mat adjoint(const Mat& g, const Mat& x) { return conj_by(g, x); }

/// c = exp(sum (i pi/4) y_psi).
Mat cayley(const AlgebraModel& model);

/// Bulk check of the defining identities. An optional replacement for Upsilon
/// exercises the negative control.
Report verify_structure(const AlgebraModel& model, double tol,
                        const std::optional<Mat>& upsilon_override = std::nullopt,
                        std::uint64_t seed = 1, int samples = 20);

// Random elements for sampling.
Mat random_m0(const AlgebraModel& model, Rng& rng, double scale = 0.3);
Mat random_mu(const AlgebraModel& model, Rng& rng, double scale = 0.3);
Mat random_m(const AlgebraModel& model, Rng& rng, double scale = 0.3);
Mat random_k0_alg(const AlgebraModel& model, Rng& rng, double scale = 0.5);
Mat random_gu_alg(const AlgebraModel& model, Rng& rng, double scale = 0.5);
Mat random_g_alg(const AlgebraModel& model, Rng& rng, double scale = 0.5);
Mat random_gu(const AlgebraModel& model, Rng& rng, double scale = 1.0);
Mat random_k0(const AlgebraModel& model, Rng& rng, double scale = 1.0);
/// exp of a random element of su(p,q).
Mat random_g0(const AlgebraModel& model, Rng& rng, double scale = 0.5);

}  // namespace hksym
