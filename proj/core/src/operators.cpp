#include "hksym/operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hksym {

Mat op_matrix(const AlgebraModel& model, const std::function<Mat(const Mat&)>& f) {
  const int d = model.dim_m();
  Mat out(d, d);
  for (int k = 0; k < d; ++k) {
    Vec e = Vec::Zero(d);
    e(k) = 1.0;
    out.col(k) = model.coords_m(f(model.from_coords_m(e)));
  }
  return out;
}

Mat ad2_op(const AlgebraModel& model, const Mat& z) {
  return op_matrix(model, [&](const Mat& w) { return bracket(z, bracket(z, w)); });
}

Mat series_apply(SeriesKind kind, const Mat& z, const Mat& w, int max_terms) {
  if (kind == SeriesKind::E_inv || kind == SeriesKind::S_inv)
    throw std::invalid_argument("series_apply: inverse kinds have no series");
  Mat out = Mat::Zero(w.rows(), w.cols());
  Mat term = w;  // ad_Z^k W / k!
  for (int k = 0; k < max_terms; ++k) {
    const bool even = k % 2 == 0;
    // E uses ad^k/(k+1)!, F uses ad^k/(k+1)! on odd k, S uses ad^k/k! on even k.
    Mat contrib;
    if (kind == SeriesKind::S && even) contrib = term;
    if (kind == SeriesKind::E && even) contrib = term / double(k + 1);
    if (kind == SeriesKind::F && !even) contrib = term / double(k + 1);
    if (contrib.size()) {
      out += contrib;
      if (k > 4 && contrib.norm() <= 1e-18 * std::max(out.norm(), 1e-300)) break;
    }
    term = bracket(z, term) / double(k + 1);
    if (term.norm() == 0.0) break;
  }
  return out;
}

Mat series_op(const AlgebraModel& model, SeriesKind kind, const Mat& z) {
  return op_matrix(model, [&](const Mat& w) { return series_apply(kind, z, w); });
}

namespace {

Mat spectral_fn(const Eigen::SelfAdjointEigenSolver<Mat>& es, double (*fn)(double)) {
  const RVec& w = es.eigenvalues();
  RVec f(w.size());
  for (int i = 0; i < w.size(); ++i) f(i) = fn(std::max(0.0, w(i)));
  return es.eigenvectors() * f.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

double f_E(double v) { return sinhc_sqrt(v); }
double f_S(double v) { return std::cosh(std::sqrt(v)); }
double f_Einv(double v) { return 1.0 / sinhc_sqrt(v); }
double f_Sinv(double v) { return 1.0 / std::cosh(std::sqrt(v)); }

bool in_m0(const AlgebraModel& model, const Mat& x, double tol) {
  return model.distance(Space::m0, x) <= tol * std::max(1.0, x.norm());
}

}  // namespace

void require_m0(const AlgebraModel& model, const Mat& x, const char* what, double tol) {
  if (!in_m0(model, x, tol)) throw std::invalid_argument(std::string(what) + ": argument not in m_0");
}

void require_mu(const AlgebraModel& model, const Mat& x, const char* what, double tol) {
  if (model.distance(Space::mu, x) > tol * std::max(1.0, x.norm()))
    throw std::invalid_argument(std::string(what) + ": argument not in m_u");
}

SpectralOps spectral_ops(const AlgebraModel& model, const Mat& z) {
  const Mat a = ad2_op(model, z);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.adjoint()));
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -1e-8 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
    throw std::invalid_argument("ad_Z^2 has a negative eigenvalue; Z is not in m_0");
  return {spectral_fn(es, f_E), spectral_fn(es, f_S), spectral_fn(es, f_Einv),
          spectral_fn(es, f_Sinv)};
}

BaseOps base_ops(const AlgebraModel& model, const Mat& z) {
  require_m0(model, z, "base_ops", 1e-9);
  const SpectralOps sz = spectral_ops(model, z);
  const SpectralOps sj = spectral_ops(model, model.J(z));
  BaseOps b;
  b.E = sz.E;
  b.S = sz.S;
  b.E_inv = sz.E_inv;
  b.S_inv = sz.S_inv;
  b.SJ = sj.S;
  b.SJ_inv = sj.S_inv;
  b.J = op_matrix(model, [&](const Mat& w) { return model.J(w); });
  return b;
}

Mat apply_series(const AlgebraModel& model, SeriesKind kind, const Mat& z, const Mat& w) {
  const bool spectral = in_m0(model, z, 1e-10);
  if (!spectral) {
    if (kind == SeriesKind::E_inv || kind == SeriesKind::S_inv)
      throw std::invalid_argument("E_inv/S_inv need Z in m_0");
    return series_apply(kind, z, w);
  }
  if (kind == SeriesKind::F) return series_apply(kind, z, w);
  const SpectralOps ops = spectral_ops(model, z);
  const Mat* op = nullptr;
  switch (kind) {
    case SeriesKind::E: op = &ops.E; break;
    case SeriesKind::S: op = &ops.S; break;
    case SeriesKind::E_inv: op = &ops.E_inv; break;
    case SeriesKind::S_inv: op = &ops.S_inv; break;
    case SeriesKind::F: break;
  }
  return apply_op(model, *op, w);
}

int SpectralDecomp::dimension() const {
  int d = 0;
  for (const auto& b : blocks) d += int(b.basis.size() + b.paired.size());
  return d;
}

namespace {

// Real coordinates on m_0 with respect to basis_m0 (each element has Frobenius norm sqrt 2).
RVec real_coords(const std::vector<Mat>& basis, const Mat& x) {
  RVec v(basis.size());
  for (size_t k = 0; k < basis.size(); ++k) v(k) = (basis[k].adjoint() * x).trace().real() / 2.0;
  return v;
}

Mat from_real(const std::vector<Mat>& basis, const RVec& v) {
  Mat x = Mat::Zero(basis[0].rows(), basis[0].cols());
  for (size_t k = 0; k < basis.size(); ++k) x += v(k) * basis[k];
  return x;
}

RMat real_op(const std::vector<Mat>& basis, const std::function<Mat(const Mat&)>& f) {
  const int d = int(basis.size());
  RMat out(d, d);
  for (int k = 0; k < d; ++k) out.col(k) = real_coords(basis, f(basis[k]));
  return out;
}

// Split the columns of v (an orthonormal eigenbasis) into runs of nearly equal eigenvalue.
std::vector<std::vector<int>> clusters(const RVec& w, double tol) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < w.size(); ++i) {
    if (out.empty() || std::abs(w(i) - w(out.back().front())) > tol) out.push_back({});
    out.back().push_back(i);
  }
  return out;
}

}  // namespace

SpectralDecomp spectrum_m0(const AlgebraModel& model, const Mat& z, double cluster_tol) {
  require_m0(model, z, "spectrum_m0", 1e-9);
  const std::vector<Mat> basis = model.basis_m0();
  const Mat jz = model.J(z);
  const RMat a1 = real_op(basis, [&](const Mat& w) { return bracket(z, bracket(z, w)); });
  const RMat a2 = real_op(basis, [&](const Mat& w) { return bracket(jz, bracket(jz, w)); });
  const RMat jop = real_op(basis, [&](const Mat& w) { return model.J(w); });
  const double scale = std::max(1.0, a1.norm() + a2.norm());
  if ((a1 * a2 - a2 * a1).norm() > 1e-8 * scale)
    throw std::runtime_error("ad_Z^2 and ad_JZ^2 do not commute");

  const double tol = cluster_tol * scale;
  Eigen::SelfAdjointEigenSolver<RMat> es1(0.5 * (a1 + a1.transpose()));
  struct Group {
    double nu1, nu2;
    RMat vecs;
  };
  std::vector<Group> groups;
  for (const auto& cl : clusters(es1.eigenvalues(), tol)) {
    RMat v1(a1.rows(), Eigen::Index(cl.size()));
    for (size_t i = 0; i < cl.size(); ++i) v1.col(Eigen::Index(i)) = es1.eigenvectors().col(cl[i]);
    const RMat r = v1.transpose() * a2 * v1;
    Eigen::SelfAdjointEigenSolver<RMat> es2(0.5 * (r + r.transpose()));
    for (const auto& c2 : clusters(es2.eigenvalues(), tol)) {
      RMat vv(a1.rows(), Eigen::Index(c2.size()));
      for (size_t i = 0; i < c2.size(); ++i) vv.col(Eigen::Index(i)) = v1 * es2.eigenvectors().col(c2[i]);
      double n1 = 0, n2 = 0;
      for (int i = 0; i < vv.cols(); ++i) {
        n1 += vv.col(i).dot(a1 * vv.col(i));
        n2 += vv.col(i).dot(a2 * vv.col(i));
      }
      groups.push_back({std::max(0.0, n1 / vv.cols()), std::max(0.0, n2 / vv.cols()), vv});
    }
  }

  SpectralDecomp out;
  out.z = z;
  for (const Group& g : groups) {
    if (g.nu1 < g.nu2 - tol) continue;  // reached through J from the mirrored group
    SpectralBlock b;
    b.nu1 = g.nu1;
    b.nu2 = g.nu2;
    if (g.nu1 > g.nu2 + tol) {
      for (int i = 0; i < g.vecs.cols(); ++i) {
        b.basis.push_back(from_real(basis, g.vecs.col(i)));
        b.paired.push_back(from_real(basis, jop * g.vecs.col(i)));
      }
    } else {
      // J preserves this eigenspace; pick v, Jv pairs one at a time.
      RMat rest = g.vecs;
      RMat chosen(rest.rows(), 0);
      for (int i = 0; i < rest.cols(); ++i) {
        RVec v = rest.col(i);
        if (chosen.cols()) v -= chosen * (chosen.transpose() * v);
        if (v.norm() < 1e-6) continue;
        v.normalize();
        RVec jv = jop * v;
        jv -= v * v.dot(jv);
        if (chosen.cols()) jv -= chosen * (chosen.transpose() * jv);
        jv.normalize();
        chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 2);
        chosen.col(chosen.cols() - 2) = v;
        chosen.col(chosen.cols() - 1) = jv;
        b.basis.push_back(from_real(basis, v));
        b.paired.push_back(from_real(basis, jv));
      }
    }
    out.blocks.push_back(std::move(b));
  }
  return out;
}

std::vector<std::pair<double, double>> predicted_spectrum(const AlgebraModel& model,
                                                         const std::vector<double>& coeffs) {
  const int r = model.rank();
  if (int(coeffs.size()) != r) throw std::invalid_argument("predicted_spectrum: need rank coefficients");
  // Positive restricted roots with nonzero m-component, as (alpha(h_j)) vectors and pair counts.
  struct Root {
    std::vector<double> on_h;
    int pairs;
  };
  std::vector<Root> roots;
  for (int s = 0; s < r; ++s) {
    std::vector<double> a(r, 0.0);
    a[s] = 2.0;
    roots.push_back({a, 1});
    a[s] = 1.0;
    if (model.p() != model.q()) roots.push_back({a, std::abs(model.q() - model.p())});
    for (int t = s + 1; t < r; ++t) {
      std::vector<double> b(r, 0.0);
      b[s] = b[t] = 1.0;
      roots.push_back({b, 2});
    }
  }
  std::vector<std::pair<double, double>> out;
  for (const Root& root : roots) {
    double x = 0, y = 0;
    for (int j = 0; j < r; ++j) {
      const double l2 = coeffs[j] * coeffs[j];
      x += l2 * root.on_h[j];
      y += l2 * l2 * root.on_h[j];
    }
    const double disc = std::sqrt(std::max(0.0, 2 * x * x - 2 * y));
    for (int k = 0; k < root.pairs; ++k) out.emplace_back(x + disc, x - disc);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<double, double>> spectrum_pairs(const SpectralDecomp& d) {
  std::vector<std::pair<double, double>> out;
  for (const auto& b : d.blocks)
    for (size_t i = 0; i < b.basis.size(); ++i) out.emplace_back(b.nu1, b.nu2);  // one {A, JA} plane each
  std::sort(out.begin(), out.end());
  return out;
}

Mat p_map(const AlgebraModel& model, const Mat& z) {
  return model.J(model.project(Space::m, conj_by(expm(z), model.upsilon())));
}

A0Coords reduce_to_a0(const AlgebraModel& model, const Mat& z) {
  const int p = model.p(), q = model.q(), r = model.rank();
  const Mat b = z.topRightCorner(p, q);
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat u = svd.matrixU(), v = svd.matrixV();
  const cplx det = u.determinant() * v.determinant();
  const double alpha = std::arg(det);
  if (q > r) {
    v.col(q - 1) *= std::exp(-kI * alpha);
  } else if (p > r) {
    u.col(p - 1) *= std::exp(-kI * alpha);
  } else {
    u.col(0) *= std::exp(-kI * alpha / 2.0);
    v.col(0) *= std::exp(-kI * alpha / 2.0);
  }
  A0Coords out;
  out.k = model.zero();
  out.k.topLeftCorner(p, p) = u;
  out.k.bottomRightCorner(q, q) = v;
  for (int j = 0; j < r; ++j) out.coeffs.push_back(svd.singularValues()(j));
  return out;
}

Mat a0_element(const AlgebraModel& model, const std::vector<double>& coeffs) {
  Mat z = model.zero();
  for (size_t j = 0; j < coeffs.size(); ++j) z += coeffs[j] * model.so().x[j];
  return z;
}

Mat p_inv(const AlgebraModel& model, const Mat& w) {
  require_m0(model, w, "p_inv");
  const A0Coords red = reduce_to_a0(model, w);
  std::vector<double> c;
  for (double wj : red.coeffs) {
    const double cj = 0.5 * std::asinh(2.0 * wj);
    if (std::abs(cj) > 20.0) throw std::invalid_argument("p_inv: coefficient exceeds 20");
    c.push_back(cj);
  }
  return conj_by(red.k, a0_element(model, c));
}

Mat t_lambda(const AlgebraModel& model, cplx lambda, const Mat& x) {
  if (lambda == cplx(0.0)) throw std::invalid_argument("t_lambda: lambda must be nonzero");
  return model.project(Space::k, x) + lambda * model.project(Space::m_plus, x) +
         model.project(Space::m_minus, x) / lambda;
}

Mat t_lambda_op(const AlgebraModel& model, cplx lambda) {
  return op_matrix(model, [&](const Mat& w) { return t_lambda(model, lambda, w); });
}

Mat dp_fd(const AlgebraModel& model, const Mat& z, const Mat& b, double h) {
  return (p_map(model, z + h * b) - p_map(model, z - h * b)) / (2.0 * h);
}

}  // namespace hksym
