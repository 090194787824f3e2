#pragma once

#include <Eigen/Dense>

#include <complex>

namespace hksym {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

inline Mat bracket(const Mat& a, const Mat& b) { return a * b - b * a; }

/// Matrix exponential by scaling and squaring with an 18-term Taylor block.
Mat expm(const Mat& x);

/// g X g^{-1}. Uses the adjoint when g is unitary to working precision.
Mat conj_by(const Mat& g, const Mat& x);

/// Anti-Hermitian part (X - X^*)/2, i.e. the g_u-component of X = Re X + i Im X.
inline Mat re_part(const Mat& x) { return 0.5 * (x - x.adjoint()); }
/// (X + X^*)/(2i), so that X = re_part(X) + i im_part(X).
inline Mat im_part(const Mat& x) { return (x + x.adjoint()) / cplx(0.0, 2.0); }

bool is_unitary(const Mat& g, double tol = 1e-10);

/// ||a - b||_F / max(1, ||b||_F).
double residual(const Mat& a, const Mat& b);
double residual(cplx a, cplx b);
double residual(double a, double b);

/// sinh(sqrt(v))/sqrt(v) for v >= 0, continuous at 0.
double sinhc_sqrt(double v);

}  // namespace hksym
