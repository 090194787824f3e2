#include "hksym/suites.hpp"

#include "hksym/deformation.hpp"
#include "hksym/moment.hpp"
#include "hksym/sl2.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace hksym {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

struct CheckSpec {
  std::string id;
  std::string anchor;
  double tol;
};

// Runs n sampled items; item i sees its own generator and its own row of tallies.
// An exception inside an item poisons every check of the suite.
class Sampler {
 public:
  Sampler(std::vector<CheckSpec> specs, const SuiteConfig& cfg, std::uint64_t salt)
      : specs_(std::move(specs)), cfg_(cfg), salt_(salt) {}

  int index(const std::string& id) const {
    for (size_t i = 0; i < specs_.size(); ++i)
      if (specs_[i].id == id) return int(i);
    throw std::logic_error("unknown check " + id);
  }

  void run(int n, const std::function<void(int, Rng&, std::vector<Tally>&)>& fn) {
    std::vector<std::vector<Tally>> rows(size_t(n), std::vector<Tally>(specs_.size()));
    parallel_for(n, cfg_.threads, [&](int i) {
      Rng rng(stream_seed(cfg_.seed ^ salt_, std::uint64_t(i)));
      try {
        fn(i, rng, rows[size_t(i)]);
      } catch (const std::exception&) {
        for (auto& t : rows[size_t(i)]) t.add(kNaN);
      }
    });
    if (tallies_.empty()) tallies_.resize(specs_.size());
    for (const auto& row : rows)
      for (size_t k = 0; k < row.size(); ++k) tallies_[k].merge(row[k]);
  }

  void finish(Report& rep, const std::string& model) const {
    for (size_t k = 0; k < specs_.size(); ++k) {
      const Tally t = tallies_.empty() ? Tally{} : tallies_[k];
      rep.add(t.finish(specs_[k].id, specs_[k].anchor, specs_[k].tol, model));
    }
  }

 private:
  std::vector<CheckSpec> specs_;
  const SuiteConfig& cfg_;
  std::uint64_t salt_;
  std::vector<Tally> tallies_;
};

int count_or(const SuiteConfig& cfg, int dflt) { return cfg.samples > 0 ? cfg.samples : dflt; }

double rel(double a, double b) { return residual(a, b); }

// ---------------------------------------------------------------- structure

Report structure_suite(const AlgebraModel& model, const SuiteConfig& cfg) {
  const double t10 = cfg.tol_exact * 0.1;
  Report rep = verify_structure(model, t10, std::nullopt, cfg.seed, count_or(cfg, 20));
  rep.suite = "structure";
  Sampler s({{"killing_J_skew", "kappa(JA,B) = -kappa(A,JB)", t10},
             {"killing_J_invariant", "kappa(JA,JB) = kappa(A,B)", t10},
             {"J_squared", "J^2 = -1 on m", t10},
             {"t_lambda_automorphism", "t_lambda is a Lie algebra automorphism", t10},
             {"t_lambda_killing", "t_lambda preserves kappa on m", t10},
             {"t_lambda_equals_Ad_exp_upsilon", "t_lambda = Ad_{exp(c Upsilon)} for unimodular lambda", t10},
             {"cayley_transform", "Cayley transform sends h to x, x to -h, fixes y", t10}},
            cfg, fnv1a("structure" + model.label()));
  const int n = count_or(cfg, 20);
  s.run(n, [&](int i, Rng& rng, std::vector<Tally>& t) {
    const Mat a = random_m(model, rng, 1.0), b = random_m(model, rng, 1.0);
    const double sc = std::max(1.0, a.norm() * b.norm());
    t[0].add(std::abs(model.killing(model.J(a), b) + model.killing(a, model.J(b))) / sc);
    t[1].add(std::abs(model.killing(model.J(a), model.J(b)) - model.killing(a, b)) / sc);
    t[2].add(residual(model.J(model.J(a)), Mat(-a)));
    const cplx lam = std::polar(rng.uniform(0.3, 3.0), rng.uniform(-kPi, kPi));
    const Mat x = random_g_alg(model, rng, 1.0), y = random_g_alg(model, rng, 1.0);
    t[3].add(residual(t_lambda(model, lam, bracket(x, y)),
                      bracket(t_lambda(model, lam, x), t_lambda(model, lam, y))));
    t[4].add(residual(model.killing(t_lambda(model, lam, a), t_lambda(model, lam, b)), model.killing(a, b)));
    const double phi = rng.uniform(-kPi, kPi);
    t[5].add(residual(t_lambda(model, std::exp(kI * phi), x), conj_by(expm(phi * model.upsilon()), x)));
    if (i == 0) {
      const Mat c = cayley(model);
      const SOSystem& so = model.so();
      for (int j = 0; j < so.rank; ++j) {
        t[6].add(residual(conj_by(c, so.h[j]), so.x[j]));
        t[6].add(residual(conj_by(c, so.x[j]), Mat(-so.h[j])));
        t[6].add(residual(conj_by(c, so.y[j]), so.y[j]));
      }
    }
  });
  s.finish(rep, model.label());
  return rep;
}

// ---------------------------------------------------------------- operators

Report operator_suite(const AlgebraModel& model, const SuiteConfig& cfg) {
  const double t10 = cfg.tol_exact * 0.1;
  Report rep;
  rep.suite = "operators";
  Sampler s({{"ad2_commute", "ad_Z^2 and ad_JZ^2 commute on m", t10},
             {"even_series_conjugation", "p(ad_JZ) = -J p(ad_Z) J for p = E, S", t10},
             {"S_identity_commute", "J S_JZ S_Z = S_JZ S_Z J", t10},
             {"S_projection", "S_Z = proj_m0 Ad_{exp Z} on m_0", t10},
             {"decomposition_identity", "Ad_{exp Z} Upsilon = (Upsilon - F_Z(JZ)) - E_Z(JZ)", t10},
             {"odd_part_identity", "(Ad_{exp Z} - Ad_{exp -Z})/2 = ad_Z E_Z on m", t10},
             {"dP_equals_SJ_E", "dP_Z = S_JZ E_Z (finite differences)", cfg.tol_fd},
             {"spectral_vs_series", "spectral E, S agree with truncated series", t10},
             {"P_equals_E_JZ", "P(Z) = E_JZ Z = J proj_m Ad_{exp Z} Upsilon", t10},
             {"P_inverse", "P o P^{-1} = id and P^{-1} o P = id on m_0", cfg.tol_exact},
             {"P_odd_fixes_m_pm", "P odd; P fixes m+ and m- pointwise", t10},
             {"P_commutes_J", "P commutes with J", t10},
             {"inverse_operators", "E_Z E_Z^{-1} = S_Z S_Z^{-1} = I", t10},
             {"t_lambda_conjugation", "p(ad_{t_lambda Z}) = t_lambda p(ad_Z) t_{1/lambda}", t10},
             {"reduce_to_a0", "Ad_k(sum c x) reconstructs Z with k in K_0", t10},
             {"P_inverse_K_equivariant", "P^{-1}(Ad_k W) = Ad_k P^{-1}(W)", cfg.tol_exact}},
            cfg, fnv1a("operators" + model.label()));
  s.run(count_or(cfg, 100), [&](int, Rng& rng, std::vector<Tally>& t) {
    const Mat z = random_m0(model, rng, 0.5);
    const Mat jz = model.J(z);
    const Mat w = random_m(model, rng, 1.0), w0 = random_m0(model, rng, 1.0);
    const Mat a1 = ad2_op(model, z), a2 = ad2_op(model, jz);
    t[0].add((a1 * a2 - a2 * a1).norm() / std::max(1.0, a1.norm() * a2.norm()));

    const SpectralOps sz = spectral_ops(model, z), sj = spectral_ops(model, jz);
    const Mat jop = op_matrix(model, [&](const Mat& x) { return model.J(x); });
    t[1].add(residual(sj.S, Mat(-jop * sz.S * jop)));
    t[1].add(residual(sj.E, Mat(-jop * sz.E * jop)));
    t[2].add(residual(Mat(jop * sj.S * sz.S), Mat(sj.S * sz.S * jop)));
    t[3].add(residual(apply_op(model, sz.S, w0), model.project(Space::m0, conj_by(expm(z), w0))));

    const Mat lhs = conj_by(expm(z), model.upsilon());
    const Mat rhs = (model.upsilon() - series_apply(SeriesKind::F, z, jz)) - series_apply(SeriesKind::E, z, jz);
    t[4].add(residual(lhs, rhs));

    const Mat odd = 0.5 * (conj_by(expm(z), w) - conj_by(expm(-z), w));
    t[5].add(residual(odd, bracket(z, apply_op(model, sz.E, w))));

    const Mat b = random_m0(model, rng, 1.0);
    t[6].add(residual(dp_fd(model, z, b), apply_op(model, sj.S, apply_op(model, sz.E, b))));

    t[7].add(residual(apply_op(model, sz.E, w), series_apply(SeriesKind::E, z, w)));
    t[7].add(residual(apply_op(model, sz.S, w), series_apply(SeriesKind::S, z, w)));

    const Mat pz = p_map(model, z);
    t[8].add(residual(pz, series_apply(SeriesKind::E, jz, z)));
    t[9].add(residual(p_map(model, p_inv(model, w0)), w0));
    t[9].add(residual(p_inv(model, pz), z));

    t[10].add(residual(p_map(model, -z), Mat(-pz)));
    const Mat wp = model.project(Space::m_plus, w), wm = model.project(Space::m_minus, w);
    t[10].add(residual(p_map(model, wp), wp));
    t[10].add(residual(p_map(model, wm), wm));
    t[11].add(residual(p_map(model, jz), model.J(pz)));

    const Mat id = Mat::Identity(sz.E.rows(), sz.E.cols());
    t[12].add(residual(Mat(sz.E * sz.E_inv), id));
    t[12].add(residual(Mat(sz.S * sz.S_inv), id));

    const cplx lam = std::polar(rng.uniform(0.4, 2.5), rng.uniform(-kPi, kPi));
    const Mat tl = t_lambda_op(model, lam), tli = t_lambda_op(model, 1.0 / lam);
    const Mat zl = t_lambda(model, lam, z);
    t[13].add(residual(series_op(model, SeriesKind::E, zl), Mat(tl * series_op(model, SeriesKind::E, z) * tli)));
    t[13].add(residual(series_op(model, SeriesKind::S, zl), Mat(tl * series_op(model, SeriesKind::S, z) * tli)));

    const A0Coords red = reduce_to_a0(model, z);
    t[14].add(residual(conj_by(red.k, a0_element(model, red.coeffs)), z));
    t[14].add(std::abs(red.k.determinant() - 1.0));
    t[14].add(model.distance(Space::k, red.k) + (is_unitary(red.k, 1e-12) ? 0.0 : 1.0));
    for (size_t j = 1; j < red.coeffs.size(); ++j) t[14].add(std::max(0.0, red.coeffs[j] - red.coeffs[j - 1]));

    const Mat k = random_k0(model, rng);
    t[15].add(residual(p_inv(model, conj_by(k, w0)), conj_by(k, p_inv(model, w0))));
  });
  s.finish(rep, model.label());
  return rep;
}

// ---------------------------------------------------------------- spectrum

double match_pairs(std::vector<std::pair<double, double>> pred, std::vector<std::pair<double, double>> got) {
  if (pred.size() != got.size()) return kNaN;
  double worst = 0.0;
  std::vector<bool> used(got.size(), false);
  for (const auto& p : pred) {
    double best = std::numeric_limits<double>::infinity();
    size_t arg = 0;
    for (size_t j = 0; j < got.size(); ++j) {
      if (used[j]) continue;
      const double d = std::max(std::abs(p.first - got[j].first), std::abs(p.second - got[j].second));
      if (d < best) best = d, arg = j;
    }
    used[arg] = true;
    worst = std::max(worst, best / std::max(1.0, std::abs(p.first)));
  }
  return worst;
}

Report spectrum_suite(const AlgebraModel& model, const SuiteConfig& cfg) {
  const double tol = cfg.tol_exact;
  Report rep;
  rep.suite = "spectrum";
  Sampler s({{"predicted_pairs", "eigenpairs match {x +- sqrt(2x^2 - 2y)} as multisets", tol},
             {"block_eigen_equations", "basis vectors are joint eigenvectors (nu1, nu2)", tol},
             {"J_pairing", "J swaps nu1 and nu2", tol},
             {"blocks_span_m0", "block dimensions sum to 2pq", tol},
             {"spectral_series_agreement", "closed-form eigenvalues reproduce the E, S series", tol}},
            cfg, fnv1a("spectrum" + model.label()));
  s.run(count_or(cfg, 50), [&](int i, Rng& rng, std::vector<Tally>& t) {
    std::vector<double> coeffs(size_t(model.rank()));
    for (auto& c : coeffs) c = i == 0 ? 0.0 : i == 1 ? 0.7 : rng.uniform(0.0, 1.2);
    const Mat k = random_k0(model, rng);
    const Mat z = conj_by(k, a0_element(model, coeffs));
    const SpectralDecomp d = spectrum_m0(model, z);
    t[0].add(match_pairs(predicted_spectrum(model, coeffs), spectrum_pairs(d)));
    const Mat jz = model.J(z);
    for (const auto& blk : d.blocks) {
      for (size_t j = 0; j < blk.basis.size(); ++j) {
        const Mat& a = blk.basis[j];
        const Mat& ja = blk.paired[j];
        const double sc = std::max(1.0, blk.nu1);
        t[1].add((bracket(z, bracket(z, a)) - blk.nu1 * a).norm() / sc);
        t[1].add((bracket(jz, bracket(jz, a)) - blk.nu2 * a).norm() / sc);
        t[2].add((bracket(z, bracket(z, ja)) - blk.nu2 * ja).norm() / sc);
        t[2].add((bracket(jz, bracket(jz, ja)) - blk.nu1 * ja).norm() / sc);
        if (blk.nu1 > blk.nu2) t[2].add(residual(ja, model.J(a)));
        t[4].add(residual(sinhc_sqrt(blk.nu1) * a, series_apply(SeriesKind::E, z, a)));
        t[4].add(residual(std::cosh(std::sqrt(blk.nu1)) * a, series_apply(SeriesKind::S, z, a)));
      }
    }
    t[3].add(std::abs(double(d.dimension() - model.dim_m())));
  });
  s.finish(rep, model.label());
  return rep;
}

// ---------------------------------------------------------------- geometry

double payload_residual(const TangentVec& x, const TangentVec& y) {
  const double num = std::sqrt((x.a - y.a).squaredNorm() + (x.b - y.b).squaredNorm());
  return num / std::max(1.0, std::sqrt(y.a.squaredNorm() + y.b.squaredNorm()));
}

TangentVec neg(const TangentVec& v) { return {v.base, v.repr, -v.a, -v.b}; }

Report geometry_suite(const AlgebraModel& model, const SuiteConfig& cfg) {
  const double tol = cfg.tol_exact;
  Report rep;
  rep.suite = "geometry";
  Sampler s({{"quaternion_relations", "J1 J2 = J3 = -J2 J1, J_k^2 = -1 in all coordinates", tol},
             {"representation_independence", "m, omega1..3 agree across tilde/hat/sharp/flat", tol},
             {"alternative_formulas", "both printed variants of each form agree", tol},
             {"metric_compatibility", "m(v,w) = omega_k(v, J_k w)", tol},
             {"omega_lambda", "omega_lambda = -m(., J_lambda .) = sum l_k omega_k", tol},
             {"kks_vs_tilde", "-i kappa(M,[xi1,xi2]) = omega2 + i omega3", tol},
             {"kks_stabilizer", "KKS value ignores stabilizer directions", tol},
             {"conversion_roundtrip", "coordinate conversions are inverse to each other", tol},
             {"ambient_roundtrip", "ambient image is coordinate-free and invertible", tol},
             {"phi_roundtrip", "Phi^{-1} o Phi = id", tol},
             {"theta_roundtrip", "Theta round trip and Q-equivariance for general g", tol},
             {"lambda_real_is_re_lambda_complex", "lambda_R = Re lambda_C", tol},
             {"dc_phi", "lambda_R(v) = (J1 v)(phi) by finite differences", cfg.tol_fd},
             {"phi_minus_phi_prime", "phi - phi' o Phi = kappa(Upsilon, Upsilon)", tol * 0.1},
             {"stokes_d_lambda_omega1", "d lambda_R = omega1 on squares of side 1e-3", cfg.tol_fd}},
            cfg, fnv1a("geometry" + model.label()));
  double min_eig_ratio = std::numeric_limits<double>::infinity();
  int pd_samples = 0;
  std::vector<double> pd(size_t(count_or(cfg, 100)), std::numeric_limits<double>::infinity());

  s.run(count_or(cfg, 100), [&](int i, Rng& rng, std::vector<Tally>& t) {
    const OrbitPoint pt = random_orbit_point(model, rng, 0.4);
    const TangentSpace ts(model, pt);
    const TangentVec v = ts.make(Repr::hat, random_mu(model, rng), random_mu(model, rng));
    const TangentVec w = ts.make(Repr::hat, random_mu(model, rng), random_mu(model, rng));
    const FormValues ref = ts.forms(v, w);
    const std::array<Repr, 4> reprs{Repr::tilde, Repr::hat, Repr::sharp, Repr::flat};
    const Mat amb = ts.ambient(v);
    for (Repr r : reprs) {
      const TangentVec vr = ts.convert(v, r), wr = ts.convert(w, r);
      const TangentVec j1 = ts.apply_J(Structure::J1, vr), j2 = ts.apply_J(Structure::J2, vr),
                       j3 = ts.apply_J(Structure::J3, vr);
      t[0].add(payload_residual(ts.apply_J(Structure::J1, j2), j3));
      t[0].add(payload_residual(ts.apply_J(Structure::J2, j1), neg(j3)));
      t[0].add(payload_residual(ts.apply_J(Structure::J1, j1), neg(vr)));
      t[0].add(payload_residual(ts.apply_J(Structure::J2, j2), neg(vr)));
      t[0].add(payload_residual(ts.apply_J(Structure::J3, j3), neg(vr)));
      // apply then convert equals convert then apply
      t[0].add(payload_residual(ts.convert(ts.apply_J(Structure::J1, v), r), j1));

      const FormValues f = ts.forms(vr, wr), g = ts.forms_alt(vr, wr);
      t[1].add(rel(f.metric, ref.metric));
      t[1].add(rel(f.w1, ref.w1));
      t[1].add(rel(f.w2, ref.w2));
      t[1].add(rel(f.w3, ref.w3));
      t[2].add(rel(g.metric, f.metric));
      t[2].add(rel(g.w1, f.w1));
      t[2].add(rel(g.w2, f.w2));
      t[2].add(rel(g.w3, f.w3));

      t[3].add(rel(ts.forms(vr, ts.apply_J(Structure::J1, wr)).w1, f.metric));
      t[3].add(rel(ts.forms(vr, ts.apply_J(Structure::J2, wr)).w2, f.metric));
      t[3].add(rel(ts.forms(vr, ts.apply_J(Structure::J3, wr)).w3, f.metric));

      t[7].add(payload_residual(ts.convert(vr, Repr::hat), v));
      t[8].add(residual(ts.ambient(vr), amb));
    }
    for (cplx lam : {cplx(0.5), cplx(2.0), cplx(0.3, 0.7), cplx(-1.0, 1.0)}) {
      const Triple tri = sphere_triple(lam);
      const double lhs = ref.omega(tri);
      t[4].add(rel(lhs, -ts.forms(v, ts.apply_J(tri, w)).metric));
    }
    const Mat xi1 = ts.generator(v), xi2 = ts.generator(w);
    t[5].add(residual(kks_free(model, ts.point(), xi1, xi2), cplx(ref.w2, ref.w3)));
    t[5].add(residual(ts.hol_form(HolForm::w2_plus_i_w3, v, w), cplx(ref.w2, ref.w3)));
    const Mat stab = rng.normal() * ts.point();
    t[6].add(residual(kks_free(model, ts.point(), xi1, xi2 + stab), kks_free(model, ts.point(), xi1, xi2)));
    t[6].add(std::abs(kks_free(model, ts.point(), xi1, xi1)));
    t[8].add(payload_residual(ts.from_ambient(amb), ts.convert(v, Repr::tilde)));

    const CotangentPoint cp = phi_map(model, pt);
    t[9].add(residual(realize(model, phi_inv(model, cp)), realize(model, pt)));
    t[9].add(residual(phi_map(model, phi_inv(model, cp)).w, cp.w));

    const CotangentPoint fl = theta_inv(model, cp);
    t[10].add(residual(theta_map(model, fl).w, cp.w));
    // [g q, W-] and [g, Ad_q W-] are the same point for q in the parabolic.
    const Mat qalg = random_k0_alg(model, rng, 0.4) + kI * random_k0_alg(model, rng, 0.4) +
                     model.project(Space::m_minus, random_m(model, rng, 0.4));
    const Mat q = expm(qalg);
    const Mat wq = model.project(Space::m_minus, conj_by(q.inverse(), fl.w));
    const CotangentPoint general{pt.g * q, wq, Flavor::flat};
    t[10].add(residual(realize(model, phi_inv(model, theta_map(model, general))), realize(model, pt)));

    t[11].add(rel(ts.lambda_real(v), ts.lambda_complex(v).real()));

    // (J1 v)(phi): phi only sees Z, and the hat curve moves Z by t i B.
    const TangentVec jv = ts.apply_J(Structure::J1, v);
    const double h = 1e-5;
    const double dphi = (potential_phi(model, {pt.g, pt.z + h * kI * jv.b}) -
                         potential_phi(model, {pt.g, pt.z - h * kI * jv.b})) / (2 * h);
    t[12].add(rel(dphi, ts.lambda_real(v)));

    t[13].add(rel(potential_phi(model, pt) - potential_phi_prime(model, cp),
                  model.killing(model.upsilon(), model.upsilon()).real()));

    if (i % 10 == 0) {
      // Stokes on a coordinate square in the sharp chart [g exp(t1 A1) exp(t2 A2), W + t1 B1 + t2 B2].
      const Mat A1 = random_mu(model, rng), B1 = random_mu(model, rng);
      const Mat A2 = random_mu(model, rng), B2 = random_mu(model, rng);
      const double side = 1e-3;
      static const double gx[6] = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                                   0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
      static const double gw[6] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                                   0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
      auto lam1 = [&](double t1, double t2) {  // lambda_R along d/dt1
        return model.killing(conj_by(expm(-t2 * A2), A1), cp.w + t1 * B1 + t2 * B2).real();
      };
      auto lam2 = [&](double t1, double t2) {  // along d/dt2
        return model.killing(A2, cp.w + t1 * B1 + t2 * B2).real();
      };
      const double hh = side / 2;
      double integral = 0.0;
      for (int k = 0; k < 6; ++k) {
        const double x = gx[k] * hh, wk = gw[k] * hh;
        integral += wk * (lam1(x, -hh) + lam2(hh, x) - lam1(x, hh) - lam2(-hh, x));
      }
      const TangentVec s1 = ts.make(Repr::sharp, A1, B1), s2 = ts.make(Repr::sharp, A2, B2);
      t[14].add(rel(integral / (side * side), ts.forms(s1, s2).w1));
    }

    // Gram matrix of m on a real basis of the tangent space.
    std::vector<TangentVec> frame;
    for (const Mat& b : model.basis_m0()) {
      frame.push_back(ts.make(Repr::hat, kI * b, model.zero()));
      frame.push_back(ts.make(Repr::hat, model.zero(), kI * b));
    }
    RMat gram(frame.size(), frame.size());
    for (size_t a = 0; a < frame.size(); ++a)
      for (size_t b = 0; b < frame.size(); ++b) gram(Eigen::Index(a), Eigen::Index(b)) = ts.forms(frame[a], frame[b]).metric;
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (gram + gram.transpose()));
    pd[size_t(i)] = es.eigenvalues().minCoeff() / es.eigenvalues().cwiseAbs().maxCoeff();
  });
  s.finish(rep, model.label());
  for (double r : pd) {
    min_eig_ratio = std::min(min_eig_ratio, std::isnan(r) ? -1.0 : r);
    ++pd_samples;
  }
  Check c;
  c.id = "metric_positive_definite";
  c.anchor = "m is positive definite (min/max Gram eigenvalue reported negated)";
  c.model = model.label();
  c.max_residual = -min_eig_ratio;
  c.tolerance = 0.0;
  c.pass = min_eig_ratio > 0.0;
  c.samples = pd_samples;
  rep.add(c);
  return rep;
}

// ---------------------------------------------------------------- moment

Report moment_suite(const AlgebraModel& model, const SuiteConfig& cfg) {
  const double tol = cfg.tol_exact;
  const int n = count_or(cfg, 50);
  Report rep;
  rep.suite = "moment";
  const std::uint64_t seed = cfg.seed ^ fnv1a("moment" + model.label());
  rep.merge(verify_moment_equation(model, {MomentKind::mu1, 0.5, false}, n, cfg.tol_fd, seed + 1));
  rep.merge(verify_moment_equation(model, {MomentKind::mu1, 0.5, true}, n, cfg.tol_fd, seed + 2));
  rep.merge(verify_moment_equation(model, {MomentKind::mu2, 0.5, false}, n, cfg.tol_fd, seed + 3));
  rep.merge(verify_moment_equation(model, {MomentKind::mu3, 0.5, false}, n, cfg.tol_fd, seed + 4));
  std::vector<cplx> lams = cfg.lambdas;
  if (lams.empty()) lams = {0.5, std::polar(0.3, kPi / 5), cplx(1.5, 1.0)};
  for (size_t k = 0; k < lams.size(); ++k) {
    Report r = verify_moment_equation(model, {MomentKind::mu_lambda, lams[k], false}, n, cfg.tol_fd, seed + 10 + k);
    for (auto& c : r.checks) c.id += "_" + std::to_string(k);
    rep.merge(r);
  }

  Sampler s({{"cotangent_orbit_agreement", "mu_k on O equals the cotangent formula through Phi", tol},
             {"holomorphic_J3", "mu1 + i mu2 = 2 Ad_g W- at flat points", tol},
             {"holomorphic_J1", "-i mu2 + mu3 is the inclusion of O", tol},
             {"equivariance", "mu(Ad_u p) = Ad_u mu(p)", tol},
             {"values_in_gu", "mu_1, mu_2, mu_3, mu_lambda take anti-Hermitian values", tol},
             {"mu_lambda_base_point", "mu_lambda(I,0) = ((1-|l|^2)/(1+|l|^2)) Upsilon", tol}},
            cfg, fnv1a("moment-identities" + model.label()));
  s.run(n, [&](int i, Rng& rng, std::vector<Tally>& t) {
    const OrbitPoint pt = random_orbit_point(model, rng);
    const CotangentPoint cp = phi_map(model, pt);
    for (MomentKind k : {MomentKind::mu1, MomentKind::mu2, MomentKind::mu3})
      t[0].add(residual(mu_orbit(model, k, pt), mu_cotangent(model, k, cp)));
    const Mat m1 = mu_cotangent(model, MomentKind::mu1, cp), m2 = mu_cotangent(model, MomentKind::mu2, cp),
              m3 = mu_cotangent(model, MomentKind::mu3, cp);
    t[1].add(residual(Mat(m1 + kI * m2), mu_hol_J3(model, theta_inv(model, cp))));
    t[2].add(residual(Mat(-kI * m2 + m3), realize(model, pt)));
    t[2].add(residual(mu_hol_J1(model, pt), realize(model, pt)));
    const cplx lam = lams[size_t(i) % lams.size()];
    const Mat u = random_gu(model, rng);
    const OrbitPoint moved{u * pt.g, pt.z};
    for (MomentKind k : {MomentKind::mu1, MomentKind::mu2, MomentKind::mu3}) {
      const Mat v = mu_orbit(model, k, pt);
      t[3].add(residual(mu_orbit(model, k, moved), conj_by(u, v)));
      t[4].add(model.distance(Space::gu, v) / std::max(1.0, v.norm()));
    }
    const Mat ml = mu_lambda(model, lam, pt);
    t[3].add(residual(mu_lambda(model, lam, moved), conj_by(u, ml)));
    t[4].add(model.distance(Space::gu, ml) / std::max(1.0, ml.norm()));
    const double a2 = std::norm(lam);
    t[5].add(residual(mu_lambda(model, lam, {model.identity(), model.zero()}),
                      Mat((1 - a2) / (1 + a2) * model.upsilon())));
  });
  s.finish(rep, model.label());
  return rep;
}

// ---------------------------------------------------------------- deformation

std::vector<cplx> default_lambdas() {
  return {0.5, 2.0, std::exp(kI * (kPi / 3)), std::polar(0.5, kPi / 4), cplx(1.0, 1.0)};
}

std::vector<cplx> default_nu_lambdas() { return {0.3, std::polar(0.5, kPi / 4), std::polar(0.8, 2 * kPi / 3)}; }

Report deformation_suite(const AlgebraModel& model, const SuiteConfig& cfg) {
  const double tol = cfg.tol_exact;
  Report rep;
  rep.suite = "deformation";
  const std::vector<cplx> l1 = cfg.lambdas.empty() ? default_lambdas() : cfg.lambdas;
  const std::vector<cplx> l4 = cfg.lambdas.empty() ? default_nu_lambdas() : cfg.lambdas;
  for (cplx l : l4) (void)nu(l);
  const int pts = count_or(cfg, 6);

  // Theorem checks, one cell per (lambda, point).
  struct Cell {
    cplx lambda;
    bool nu_check;
    int index;
  };
  std::vector<Cell> cells;
  for (size_t k = 0; k < l1.size(); ++k)
    for (int p = 0; p < pts; ++p) cells.push_back({l1[k], false, int(k * 1000 + p)});
  for (size_t k = 0; k < l4.size(); ++k)
    for (int p = 0; p < pts; ++p) cells.push_back({l4[k], true, int(100000 + k * 1000 + p)});
  std::vector<Report> cell_reports(cells.size());
  const std::uint64_t salt = fnv1a("deformation" + model.label());
  parallel_for(int(cells.size()), cfg.threads, [&](int i) {
    const Cell& cell = cells[size_t(i)];
    Rng rng(stream_seed(cfg.seed ^ salt, std::uint64_t(cell.index)));
    const OrbitPoint pt = random_orbit_point(model, rng);
    const TangentSpace ts(model, pt);
    std::vector<TangentVec> frame;
    for (int k = 0; k < 4; ++k) frame.push_back(ts.make(Repr::hat, random_mu(model, rng), random_mu(model, rng)));
    Report r;
    if (cell.nu_check) {
      r.merge(verify_theorem(model, Theorem::omega3_pullback, cell.lambda, pt, frame, 10 * tol));
    } else {
      r.merge(verify_theorem(model, Theorem::intertwine_J, cell.lambda, pt, frame, tol, cfg.tol_fd));
      r.merge(verify_theorem(model, Theorem::hol_symplectic_pullback, cell.lambda, pt, frame, 10 * tol));
      r.merge(verify_theorem(model, Theorem::abcd_solution, cell.lambda, pt, frame, tol));
    }
    cell_reports[size_t(i)] = r;
  });
  // Fold cells into one check per theorem id.
  std::vector<std::string> order;
  std::vector<Check> folded;
  for (const Report& r : cell_reports)
    for (const Check& c : r.checks) {
      size_t k = 0;
      while (k < order.size() && order[k] != c.id) ++k;
      if (k == order.size()) {
        order.push_back(c.id);
        Check base = c;
        base.samples = 0;
        base.max_residual = 0.0;
        base.pass = true;
        folded.push_back(base);
      }
      Check& f = folded[k];
      if (std::isnan(c.max_residual) || std::isnan(f.max_residual))
        f.max_residual = kNaN;
      else
        f.max_residual = std::max(f.max_residual, c.max_residual);
      f.samples += c.samples;
      f.pass = f.pass && c.pass;
    }
  for (auto& c : folded) rep.add(c);

  Sampler s({{"sl2_matrix_identity", "SL(2) identity behind the coordinate formula", 0.1 * tol},
             {"abc_identities", "cosh2c = cosh2r cos2s and the two sinh relations", 1e-3 * tol},
             {"t_lambda_stereo_identity", "I + i l3 J = t_lambda(l1 - l2 J) on m", 1e-3 * tol},
             {"t_nu_identity", "t_nu^{-1} - t_conj(nu) = 2i(l1 J + l2)/l3 on m", 1e-3 * tol},
             {"coordinate_formula", "coordinate formula realizes Ad_g Ad_{exp t_lambda Z} Upsilon", tol},
             {"T_lambda_roundtrip", "T_lambda^{-1} o T_lambda = id", 10 * tol},
             {"cotangent_formula", "Phi o T_lambda o Phi^{-1} matches the W' formula", 10 * tol},
             {"dT_methods_agree", "pushforward and finite-difference dT agree", cfg.tol_fd},
             {"T_lambda_equivariant", "T_lambda commutes with left translation by G_u", tol},
             {"T_one_identity", "T_1 is the identity", tol},
             {"sphere_param", "stereographic triple is a unit vector; 0, 1, i give J3, J1, J2", 1e-3 * tol},
             {"nu_conjugation", "nu(conj l) = conj nu(l)", 1e-3 * tol}},
            cfg, fnv1a("deformation-identities" + model.label()));
  s.run(count_or(cfg, 100), [&](int i, Rng& rng, std::vector<Tally>& t) {
    const double c = rng.uniform(-1.5, 1.5);
    const cplx lam = std::polar(rng.uniform(0.2, 3.0), rng.uniform(-kPi, kPi));
    const auto [lhs, rhs] = sl2_identity_sides(c, lam);
    t[0].add(residual(lhs, rhs));
    for (double r : abc_residuals(c, std::abs(lam))) t[1].add(r);
    const cplx lk = l1[size_t(i) % l1.size()];
    t[2].add(t_identity_residual(model, lk));
    t[2].add(t_identity_residual(model, lam));
    const cplx ln = l4[size_t(i) % l4.size()];
    t[3].add(t_nu_identity_residual(model, ln));

    const OrbitPoint pt = random_orbit_point(model, rng);
    const cplx lt = i % 2 ? lk : ln;
    const OrbitPoint img = T_lambda(model, lt, pt);
    t[4].add(residual(realize(model, img), T_lambda_realized(model, lt, pt)));
    t[5].add(residual(realize(model, T_lambda_inv(model, lt, img)), realize(model, pt)));
    const CotangentPoint cimg = T_lambda_cotangent(model, lt, phi_map(model, pt));
    t[6].add(residual(realize(model, phi_inv(model, cimg)), realize(model, img)));
    t[6].add(residual(phi_map(model, img).w, phi_map(model, phi_inv(model, cimg)).w));

    if (i % 5 == 0) {
      const TangentSpace ts(model, pt);
      const TangentVec v = ts.make(Repr::hat, random_mu(model, rng), random_mu(model, rng));
      const TangentVec a = dT_lambda(model, lt, v, DiffMethod::pushforward);
      const TangentVec b = dT_lambda(model, lt, v, DiffMethod::finite_diff);
      t[7].add(payload_residual(b, a));
    }
    const Mat u = random_gu(model, rng);
    t[8].add(residual(realize(model, T_lambda(model, lt, {u * pt.g, pt.z})), conj_by(u, realize(model, img))));
    t[9].add(residual(realize(model, T_lambda(model, 1.0, pt)), realize(model, pt)));

    const Triple tr = sphere_triple(lam);
    t[10].add(std::abs(tr.l1 * tr.l1 + tr.l2 * tr.l2 + tr.l3 * tr.l3 - 1.0));
    if (i == 0) {
      const Triple a = sphere_triple(0.0), b = sphere_triple(1.0), d = sphere_triple(kI);
      t[10].add(std::abs(a.l3 - 1.0) + std::abs(a.l1) + std::abs(a.l2));
      t[10].add(std::abs(b.l1 - 1.0) + std::abs(b.l2) + std::abs(b.l3));
      t[10].add(std::abs(d.l2 - 1.0) + std::abs(d.l1) + std::abs(d.l3));
    }
    t[11].add(residual(nu(std::conj(ln)), std::conj(nu(ln))));
  });
  s.finish(rep, model.label());
  return rep;
}

// ---------------------------------------------------------------- sl2

Report sl2_suite(const SuiteConfig& cfg) {
  const double tol = cfg.tol_exact;
  const AlgebraModel model(1, 1);
  const std::string lbl = model.label();
  Report rep;
  rep.suite = "sl2";

  std::vector<double> s_grid, r_grid;
  for (int k = 0; k < 64; ++k) s_grid.push_back(kPi * k / 64.0);
  for (int k = 0; k <= 40; ++k) r_grid.push_back(-2.0 + 4.0 * k / 40.0);

  {
    Tally base, ray, stated, j3;
    for (const auto& row : critical_set(model, CriticalStructure::J1, s_grid, r_grid)) {
      if (row.family == "base_sphere") {
        base.add(rel(row.f, std::cos(4 * row.s)));
      } else {
        ray.add(rel(row.f, -std::cosh(4 * row.r)));
        stated.add(rel(row.f, row.f_stated));
      }
    }
    for (const auto& row : critical_set(model, CriticalStructure::J3, s_grid, r_grid)) j3.add(rel(row.f, row.f_predicted));
    rep.add(base.finish("J1_base_sphere_f_cos4s", "f = cos 4s on the r = 0 critical sphere", 0.1 * tol, lbl));
    rep.add(ray.finish("J1_equator_ray_f_observed", "f = -cosh 4r observed on the s = pi/4, c = pi/2 ray", 0.1 * tol, lbl));
    Check info = stated.finish("J1_equator_ray_f_stated_cosh4r", "printed value cosh 4r (informational, sign differs)", 0.1 * tol, lbl);
    info.pass = true;
    info.tolerance = std::numeric_limits<double>::infinity();
    rep.add(info);
    rep.add(j3.finish("J3_critical_f", "f = 1 on the polar fibres and -1 at the equator point", 0.1 * tol, lbl));
  }

  {
    Tally point, fclosed, display, odd, equator;
    double fmin = std::numeric_limits<double>::infinity(), fmax = -fmin;
    for (cplx lam : {cplx(0.5), std::polar(0.3, 0.7), cplx(0.8), std::polar(0.5, kPi / 3)}) {
      for (double c : {0.0, 0.4}) {
        for (double r : r_grid) {
          const PushforwardRow row = pushforward_critical(model, lam, r, c);
          point.add(row.point_residual);
          fclosed.add(rel(row.f, row.f_closed));
          display.add(row.display_residual);
          const PushforwardRow mirror = pushforward_critical(model, lam, -r, c);
          odd.add(std::abs(mirror.s_prime + row.s_prime) + std::abs(mirror.r_prime + row.r_prime));
          fmin = std::min(fmin, row.f);
          fmax = std::max(fmax, row.f);
        }
        equator.add(pushforward_equator_residual(model, lam, c));
      }
    }
    for (double r : {3.0, 4.0, 5.0}) fmin = std::min(fmin, pushforward_critical(model, 0.5, r).f);
    rep.add(point.finish("pushforward_point", "image equals Ad_{D(c) R'(s') H(r')} Upsilon", 10 * tol, lbl));
    rep.add(fclosed.finish("pushforward_f_closed_form", "f of the image matches the closed form", 10 * tol, lbl));
    rep.add(display.finish("pushforward_display", "entrywise display of the image family", 0.1 * tol, lbl));
    rep.add(odd.finish("pushforward_odd", "s' and r' are odd in r", 0.1 * tol, lbl));
    rep.add(equator.finish("pushforward_equator_fixed", "equator points are fixed", tol, lbl));
    Tally range;
    range.add(std::abs(fmax - 1.0));
    range.add(fmin < -10.0 ? 0.0 : 1.0);
    rep.add(range.finish("pushforward_f_range", "f reaches 1 and drops below -10 on the family", tol, lbl));
  }

  {
    Tally crossing;
    for (double a : {0.3, 0.5, 0.8}) {
      const double r = f_minus1_crossing(a);
      const PushforwardRow row = pushforward_critical(model, a, r, 0.0);
      crossing.add(rel(row.f, -1.0));
      crossing.add(row.cls.re_a > 0 ? 0.0 : 1.0);
      crossing.add(row.cls.tag == Sl2Class::nonclosed_pp || row.cls.tag == Sl2Class::nonclosed_pm ? 0.0 : 1.0);
    }
    rep.add(crossing.finish("f_minus1_crossing_re_a_positive", "at f = -1 the family has Re A > 0 (non-closed)", 10 * tol, lbl));
  }

  {
    Sampler s({{"f_G0_invariant", "f is Ad_{G_0}-invariant", tol},
               {"f_range", "f <= 1 on random orbit points", tol},
               {"decompose_sl2_roundtrip", "display parameters reproduce the point", 10 * tol}},
              cfg, fnv1a("sl2"));
    s.run(count_or(cfg, 100), [&](int, Rng& rng, std::vector<Tally>& t) {
      const Mat m = realize(model, random_orbit_point(model, rng, 0.8));
      const Mat g0 = random_g0(model, rng, 0.8);
      const double f = f_invariant(m, 1e-8);
      t[0].add(rel(f_invariant(conj_by(g0, m), 1e-8), f));
      for (int k = 0; k < 10; ++k) {
        const OrbitPoint q{random_g0(model, rng, 0.6) * random_gu(model, rng), random_m0(model, rng, 0.8)};
        t[1].add(std::max(0.0, f_invariant(realize(model, q), 1e-8) - 1.0));
      }
      const Sl2Params par = decompose_sl2(model, m);
      const Mat rebuilt = conj_by(sl2_phase(par.a) * sl2_rotation(par.s) * sl2_phase(par.c) * sl2_boost(par.r),
                                  model.upsilon());
      t[2].add(residual(rebuilt, m));
    });
    s.finish(rep, lbl);
  }

  {
    struct Case {
      Mat m;
      Sl2Class expected;
    };
    const double a = 0.6, b = 0.8, bb = 2.0;
    const std::vector<Case> cases = {
        {sl2_matrix(0.0, 1.0, 1.0), Sl2Class::closed_f_minus1},
        {sl2_matrix(1.0, 2.0, 0.0), Sl2Class::nonclosed_pp},
        {sl2_matrix(-1.0, 2.0, 0.0), Sl2Class::nonclosed_mp},
        {sl2_matrix(1.0, 0.0, 2.0), Sl2Class::nonclosed_pm},
        {sl2_matrix(-1.0, 0.0, 2.0), Sl2Class::nonclosed_mm},
        {model.upsilon(), Sl2Class::O0_plus},
        {Mat(-model.upsilon()), Sl2Class::O0_minus},
        {sl2_matrix(a, b, b), Sl2Class::closed_interior_plus},
        {sl2_matrix(-a, b, b), Sl2Class::closed_interior_minus},
        {sl2_matrix(0.0, bb, 1.0 / bb), Sl2Class::closed_below_plus},
        {sl2_matrix(0.0, 1.0 / bb, bb), Sl2Class::closed_below_minus},
    };
    Tally cls;
    for (const Case& c : cases) cls.add(classify_orbit(c.m).tag == c.expected ? 0.0 : 1.0);
    cls.add(rel(f_invariant(sl2_matrix(0.0, bb, 1.0 / bb)), -(bb * bb + 1.0 / (bb * bb)) / 2.0));
    cls.add(rel(f_invariant(sl2_matrix(a, b, b)), 2 * a * a - 1.0));
    rep.add(cls.finish("classification_representatives", "representative matrices land in their orbit classes", 1e-3 * tol, lbl));
  }
  return rep;
}

}  // namespace

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min(threads, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"structure", "operators", "spectrum", "geometry",
                                                 "moment",    "deformation", "sl2"};
  return names;
}

Report run_suite(const std::string& name, const AlgebraModel& model, const SuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  if (name == "structure") rep = structure_suite(model, cfg);
  else if (name == "operators") rep = operator_suite(model, cfg);
  else if (name == "spectrum") rep = spectrum_suite(model, cfg);
  else if (name == "geometry") rep = geometry_suite(model, cfg);
  else if (name == "moment") rep = moment_suite(model, cfg);
  else if (name == "deformation") rep = deformation_suite(model, cfg);
  else if (name == "sl2") rep = sl2_suite(cfg);
  else throw std::invalid_argument("unknown suite: " + name);
  rep.suite = name;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Report run_all(const AlgebraModel& model, const SuiteConfig& cfg) {
  Report all;
  all.suite = "all";
  for (const auto& name : suite_names()) {
    if (name == "sl2" && (model.p() != 1 || model.q() != 1)) continue;
    const Report r = run_suite(name, model, cfg);
    all.merge(r);
    all.wall_seconds += r.wall_seconds;
  }
  return all;
}

}  // namespace hksym
