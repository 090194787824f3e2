#pragma once

#include "hksym/linalg.hpp"

#include <cmath>
#include <initializer_list>

namespace hksym::test {

inline Mat mat2(cplx a, cplx b, cplx c, cplx d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

/// Plain Taylor series for exp; only for small test matrices.
inline Mat taylor_exp(const Mat& x, int terms = 60) {
  Mat out = Mat::Identity(x.rows(), x.cols());
  Mat term = out;
  for (int k = 1; k < terms; ++k) {
    term = term * x / double(k);
    out += term;
  }
  return out;
}

/// sum_k ad_Z^k W * coeff(k), truncated at `terms`.
template <class Coeff>
Mat ad_series(const Mat& z, const Mat& w, int terms, Coeff coeff) {
  Mat out = Mat::Zero(w.rows(), w.cols());
  Mat term = w;
  for (int k = 0; k < terms; ++k) {
    out += coeff(k) * term;
    term = z * term - term * z;
  }
  return out;
}

inline double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

/// E_Z = sinh(ad_Z)/ad_Z: coefficient 1/(2j+1)! on ad^{2j}.
inline Mat oracle_E(const Mat& z, const Mat& w, int terms = 30) {
  return ad_series(z, w, terms, [](int k) { return k % 2 ? 0.0 : 1.0 / factorial(k + 1); });
}
/// S_Z = cosh(ad_Z): coefficient 1/(2j)! on ad^{2j}.
inline Mat oracle_S(const Mat& z, const Mat& w, int terms = 30) {
  return ad_series(z, w, terms, [](int k) { return k % 2 ? 0.0 : 1.0 / factorial(k); });
}

/// tr(ad_X ad_Y) over gl(n) from the Kronecker form of ad; equals the sl(n) value for traceless X, Y.
inline cplx oracle_killing(const Mat& x, const Mat& y) {
  const auto n = x.rows();
  const Mat id = Mat::Identity(n, n);
  auto ad = [&](const Mat& a) {
    Mat k(n * n, n * n);
    // vec(AX - XA) = (I kron A - A^T kron I) vec(X), column-major vec
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        k.block(i * n, j * n, n, n) = id(i, j) * a - a(j, i) * id;
      }
    return k;
  };
  return (ad(x) * ad(y)).trace();
}

}  // namespace hksym::test
