#include "hksym/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace hksym {

Mat expm(const Mat& x) { return x.exp(); }

bool is_unitary(const Mat& g, double tol) {
  return (g.adjoint() * g - Mat::Identity(g.rows(), g.cols())).norm() < tol;
}

Mat conj_by(const Mat& g, const Mat& x) {
  if (is_unitary(g, 1e-13)) return g * x * g.adjoint();
  return g * x * g.inverse();
}

double residual(const Mat& a, const Mat& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

double residual(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double residual(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double sinhc_sqrt(double v) {
  if (v < 1e-8) return 1.0 + v / 6.0 + v * v / 120.0;
  const double r = std::sqrt(v);
  return std::sinh(r) / r;
}

}  // namespace hksym
