#pragma once

#include "hksym/lie_model.hpp"

#include <functional>
#include <vector>

namespace hksym {

enum class SeriesKind { E, F, S, E_inv, S_inv };

/// Matrix of a linear map m -> m in the coords_m basis (orthonormal for the Frobenius product).
Mat op_matrix(const AlgebraModel& model, const std::function<Mat(const Mat&)>& f);
inline Mat apply_op(const AlgebraModel& model, const Mat& op, const Mat& w) {
  return model.from_coords_m(op * model.coords_m(w));
}
/// ad_Z^2 restricted to m.
Mat ad2_op(const AlgebraModel& model, const Mat& z);

/// Truncated power series in ad_Z applied to W (E, F or S only).
/// Terms are summed until they fall below 1e-18 relative to the running sum.
Mat series_apply(SeriesKind kind, const Mat& z, const Mat& w, int max_terms = 200);
/// Same series as an operator matrix on m; valid for any Z in m, including complex ones.
Mat series_op(const AlgebraModel& model, SeriesKind kind, const Mat& z);

/// E_Z, S_Z and their inverses on m for Z in m_0, from the eigendecomposition of ad_Z^2.
struct SpectralOps {
  Mat E, S, E_inv, S_inv;
};
SpectralOps spectral_ops(const AlgebraModel& model, const Mat& z);

/// Everything the tangent-space formulas need at a base point Z in m_0.
struct BaseOps {
  Mat E, S, E_inv, S_inv;
  Mat SJ, SJ_inv;  // S_{JZ}
  Mat J;           // J as a matrix on m
};
BaseOps base_ops(const AlgebraModel& model, const Mat& z);

/// E, F, S through the spectral path when Z is in m_0, the series otherwise.
/// The inverse kinds require Z in m_0 and throw std::invalid_argument otherwise.
Mat apply_series(const AlgebraModel& model, SeriesKind kind, const Mat& z, const Mat& w);

struct SpectralBlock {
  double nu1 = 0.0, nu2 = 0.0;  // nu1 >= nu2
  std::vector<Mat> basis;       // eigenvalues (nu1, nu2)
  std::vector<Mat> paired;      // J applied to basis; eigenvalues (nu2, nu1)
};
struct SpectralDecomp {
  Mat z;
  std::vector<SpectralBlock> blocks;
  int dimension() const;
};
/// Simultaneous eigenspaces of ad_Z^2 and ad_{JZ}^2 on m_0.
/// Throws std::runtime_error if the two operators fail to commute to 1e-8.
SpectralDecomp spectrum_m0(const AlgebraModel& model, const Mat& z, double cluster_tol = 1e-9);

/// Unordered eigenvalue pairs, one per J-paired 2-plane of m_0, from the restricted roots.
std::vector<std::pair<double, double>> predicted_spectrum(const AlgebraModel& model,
                                                         const std::vector<double>& coeffs);
/// The same multiset read off a decomposition, sorted for comparison.
std::vector<std::pair<double, double>> spectrum_pairs(const SpectralDecomp& d);

/// P(Z) = J proj_m(Ad_{exp Z} Upsilon).
Mat p_map(const AlgebraModel& model, const Mat& z);

struct A0Coords {
  Mat k;                      // in K_0, det 1
  std::vector<double> coeffs; // descending, nonnegative
};
/// Z = Ad_k(sum c_j x_j) from the SVD of the upper-right block.
A0Coords reduce_to_a0(const AlgebraModel& model, const Mat& z);
Mat a0_element(const AlgebraModel& model, const std::vector<double>& coeffs);

/// Inverse of P on m_0. Throws for W outside m_0 or if a coefficient would exceed 20.
Mat p_inv(const AlgebraModel& model, const Mat& w);

/// Identity on k, lambda on m+, 1/lambda on m-.
Mat t_lambda(const AlgebraModel& model, cplx lambda, const Mat& x);
Mat t_lambda_op(const AlgebraModel& model, cplx lambda);

/// Central-difference differential of P at Z in direction B.
Mat dp_fd(const AlgebraModel& model, const Mat& z, const Mat& b, double h = 1e-5);

/// Throws std::invalid_argument unless X is in m_0 to tol.
void require_m0(const AlgebraModel& model, const Mat& x, const char* what, double tol = 1e-10);
void require_mu(const AlgebraModel& model, const Mat& x, const char* what, double tol = 1e-10);

}  // namespace hksym
