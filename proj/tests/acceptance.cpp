// Acceptance criteria 1-8: one PASS/FAIL line each; exit status 0 only if all pass.
#include "process.hpp"

#include "hksym/suites.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace hksym;

namespace {

struct Requirement {
  std::string id;   // exact id, or a prefix ending in '*'
  double tol;       // largest tolerance the check may have been run at
  int min_samples;  // per model
};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
};

bool matches(const std::string& pattern, const std::string& id) {
  if (!pattern.empty() && pattern.back() == '*') return id.rfind(pattern.substr(0, pattern.size() - 1), 0) == 0;
  return pattern == id;
}

void require(const Report& rep, const std::vector<Requirement>& reqs, const std::string& model, Outcome& out) {
  for (const auto& r : reqs) {
    int seen = 0;
    for (const auto& c : rep.checks) {
      if (!matches(r.id, c.id)) continue;
      ++seen;
      std::ostringstream why;
      why << model << " " << c.id;
      if (!c.pass) out.fail(why.str() + " failed (residual " + std::to_string(c.max_residual) + ")");
      if (c.tolerance > r.tol * (1 + 1e-12)) out.fail(why.str() + " ran at a looser tolerance than required");
      if (c.samples < r.min_samples) out.fail(why.str() + " has too few samples");
    }
    if (seen == 0) out.fail(model + " missing check " + r.id);
  }
}

const std::vector<std::pair<int, int>> kModels = {{1, 1}, {2, 1}, {2, 2}};

Outcome suite_criterion(const std::string& suite, const std::vector<Requirement>& reqs, double* seconds = nullptr) {
  Outcome out;
  SuiteConfig cfg;  // seed 42, tol_exact 1e-9, tol_fd 1e-5
  const auto t0 = std::chrono::steady_clock::now();
  for (auto [p, q] : kModels) {
    const AlgebraModel model(p, q);
    try {
      require(run_suite(suite, model, cfg), reqs, model.label(), out);
    } catch (const std::exception& e) {
      out.fail(model.label() + " threw: " + e.what());
    }
  }
  if (seconds) *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

Outcome criterion1() {
  double secs = 0;
  Outcome out = suite_criterion("structure", {{"sl2_triple_relations", 1e-10, 1},
                                              {"strong_orthogonality", 1e-10, 1},
                                              {"m_plus_minus_abelian", 1e-10, 1},
                                              {"ad_upsilon_eigenvalue", 1e-10, 1},
                                              {"involutions_commute", 1e-10, 1},
                                              {"killing_k_m_orthogonal", 1e-10, 1}},
                                 &secs);
  if (secs >= 5.0) out.fail("runtime " + std::to_string(secs) + " s >= 5 s");
  out.notes.push_back("runtime " + std::to_string(secs) + " s");
  return out;
}

Outcome criterion2() {
  return suite_criterion("operators", {{"ad2_commute", 1e-10, 100},
                                       {"decomposition_identity", 1e-10, 100},
                                       {"S_identity_commute", 1e-10, 100},
                                       {"S_projection", 1e-10, 100},
                                       {"odd_part_identity", 1e-10, 100},
                                       {"dP_equals_SJ_E", 1e-5, 100},
                                       {"spectral_vs_series", 1e-10, 100}});
}

Outcome criterion3() { return suite_criterion("spectrum", {{"predicted_pairs", 1e-9, 50}}); }

Outcome criterion4() {
  return suite_criterion("geometry", {{"quaternion_relations", 1e-9, 1},
                                      {"representation_independence", 1e-9, 1},
                                      {"metric_positive_definite", 0.0, 1},
                                      {"kks_vs_tilde", 1e-9, 1},
                                      {"dc_phi", 1e-5, 1},
                                      {"phi_minus_phi_prime", 1e-10, 1}});
}

Outcome criterion5() {
  return suite_criterion("moment", {{"moment_equation_mu1", 1e-5, 50},
                                    {"moment_equation_mu2", 1e-5, 50},
                                    {"moment_equation_mu3", 1e-5, 50},
                                    {"moment_equation_mu_lambda*", 1e-5, 50},
                                    {"cotangent_orbit_agreement", 1e-9, 50},
                                    {"holomorphic_J3", 1e-9, 50},
                                    {"holomorphic_J1", 1e-9, 50}});
}

Outcome criterion6() {
  // the default lambda sets are the ones the criterion names
  return suite_criterion("deformation", {{"intertwine_J_closed_form", 1e-9, 1},
                                         {"intertwine_J_finite_diff", 1e-5, 1},
                                         {"hol_symplectic_pullback", 1e-8, 1},
                                         {"omega3_pullback", 1e-8, 1},
                                         {"sl2_matrix_identity", 1e-10, 100},
                                         {"abc_identities", 1e-12, 100}});
}

Outcome criterion7() {
  Outcome out;
  SuiteConfig cfg;
  const AlgebraModel model(1, 1);
  try {
    require(run_suite("sl2", model, cfg),
            {{"J1_base_sphere_f_cos4s", 1e-10, 1},
             {"pushforward_point", 1e-8, 1},
             {"pushforward_f_closed_form", 1e-8, 1},
             {"pushforward_odd", 1e-8, 1},
             {"f_minus1_crossing_re_a_positive", 1e-8, 1},
             {"f_G0_invariant", 1e-9, 100},
             {"classification_representatives", 1e-9, 6}},
            model.label(), out);
  } catch (const std::exception& e) {
    out.fail(std::string("threw: ") + e.what());
  }
  return out;
}

Outcome criterion8() {
  Outcome out;
  std::string cli;
  try {
    cli = test::cli_path();
  } catch (const std::exception& e) {
    out.fail(e.what());
    return out;
  }
  std::vector<nlohmann::json> reports;
  for (int run = 0; run < 2; ++run) {
    const auto t0 = std::chrono::steady_clock::now();
    const test::RunResult r = test::run_command("env -u HKSYM_SEED " + cli + " verify --seed 42 --format json");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.notes.push_back("run " + std::to_string(run + 1) + ": exit " + std::to_string(r.exit_code) + ", " +
                        std::to_string(secs) + " s");
    if (r.exit_code != 0) out.fail("exit code " + std::to_string(r.exit_code));
    if (secs >= 60.0) out.fail("runtime >= 60 s");
    try {
      auto j = nlohmann::json::parse(r.out);
      if (j["models"].size() != 3) out.fail("report does not cover all three models");
      if (j["checks_failed"] != 0) out.fail("report lists failing checks");
      j.erase("wall_seconds");
      reports.push_back(j);
    } catch (const std::exception& e) {
      out.fail(std::string("unparseable report: ") + e.what());
    }
  }
  if (reports.size() == 2 && reports[0] != reports[1]) out.fail("reports differ between runs");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"structure identities on su(1,1), su(2,1), su(2,2) at 1e-10, under 5 s", criterion1},
      {"operator identities over >= 100 random Z; spectral vs series 1e-10", criterion2},
      {"spectrum of (ad_Z^2, ad_JZ^2) matches predicted pairs to 1e-9", criterion3},
      {"quaternion relations, coordinate independence, metric, KKS, d^c phi, potentials", criterion4},
      {"moment equations, cotangent agreement, holomorphic moment identities", criterion5},
      {"deformation theorems, SL(2) matrix identity, internal identities", criterion6},
      {"SL(2) critical values, pushforward closed forms, classification", criterion7},
      {"full hksym verify: < 60 s, exit 0, deterministic JSON", criterion8},
  };
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = criteria[i].second();
    all = all && o.pass;
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
