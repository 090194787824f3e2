#include "cli_parse.hpp"

#include "hksym/deformation.hpp"
#include "hksym/operators.hpp"
#include "hksym/sl2.hpp"
#include "hksym/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using nlohmann::json;
using namespace hksym;
using namespace hksym::cli;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadConfig = 2;

struct Options {
  std::string model;
  std::string seed = "42";
  int samples = 0;
  double tol_exact = 1e-9;
  double tol_fd = 1e-5;
  std::string lambda;
  std::string format = "text";
  std::string out;
  int threads = 0;
};

struct BadConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Options& o, bool with_lambda = true) {
  app->add_option("--model", o.model, "algebra su(p,q) as p,q");
  app->add_option("--seed", o.seed, "64-bit seed (HKSYM_SEED overrides)");
  app->add_option("--samples", o.samples, "samples per suite (0 keeps suite defaults)");
  app->add_option("--tol-exact", o.tol_exact, "tolerance for closed-form checks");
  app->add_option("--tol-fd", o.tol_fd, "tolerance for finite-difference checks");
  if (with_lambda) app->add_option("--lambda", o.lambda, "comma list of a+bi or r@theta");
  app->add_option("--format", o.format, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app->add_option("--out", o.out, "write output here instead of stdout");
  app->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

std::uint64_t resolve_seed(const Options& o) {
  if (const char* env = std::getenv("HKSYM_SEED"); env && *env) return parse_seed(env);
  return parse_seed(o.seed);
}

void validate_common(const Options& o) {
  if (!(o.tol_exact > 0) || !(o.tol_fd > 0)) throw BadConfig("tolerances must be positive");
  if (o.samples < 0) throw BadConfig("--samples must be positive");
  if (o.threads < 0) throw BadConfig("--threads must be non-negative");
}

int thread_count(const Options& o) {
  if (o.threads > 0) return o.threads;
  return int(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<cplx> checked_lambdas(const std::string& s, bool need_nu) {
  if (s.empty()) return {};
  std::vector<cplx> out = parse_complex_list(s);
  for (cplx l : out) {
    if (std::abs(l) == 0.0) throw BadConfig("lambda = 0 rejected");
    if (need_nu && std::abs(1.0 - std::abs(l)) <= 1e-6) throw BadConfig("unit-circle lambda rejected");
  }
  return out;
}

std::string fmt(double v, int digits = 17) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw BadConfig("cannot open --out " + o.out);
  f << text;
  if (!f) throw BadConfig("write failed for --out " + o.out);
}

// ------------------------------------------------------------------ tables

struct Table {
  std::string command;
  std::vector<std::string> cols;
  std::vector<std::vector<json>> rows;
  json meta = json::object();
};

std::string cell_text(const json& v, int digits) {
  if (v.is_number_float()) return fmt(v.get<double>(), digits);
  if (v.is_null()) return "nan";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string render(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json j = t.meta;
    j["command"] = t.command;
    j["rows"] = json::array();
    for (const auto& row : t.rows) {
      json r = json::object();
      for (size_t k = 0; k < t.cols.size(); ++k) r[t.cols[k]] = row[k];
      j["rows"].push_back(r);
    }
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    for (size_t k = 0; k < t.cols.size(); ++k) os << (k ? "," : "") << csv_escape(t.cols[k]);
    os << "\n";
    for (const auto& row : t.rows) {
      for (size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_escape(cell_text(row[k], 17));
      os << "\n";
    }
  } else {
    std::vector<std::vector<std::string>> cells;
    std::vector<size_t> width(t.cols.size());
    for (size_t k = 0; k < t.cols.size(); ++k) width[k] = t.cols[k].size();
    for (const auto& row : t.rows) {
      cells.emplace_back();
      for (size_t k = 0; k < row.size(); ++k) {
        cells.back().push_back(cell_text(row[k], 10));
        width[k] = std::max(width[k], cells.back().back().size());
      }
    }
    auto line = [&](const std::vector<std::string>& v) {
      for (size_t k = 0; k < v.size(); ++k) {
        os << (k ? "  " : "") << v[k];
        if (k + 1 < v.size()) os << std::string(width[k] - v[k].size(), ' ');
      }
      os << "\n";
    };
    line(t.cols);
    for (const auto& c : cells) line(c);
  }
  return os.str();
}

// ------------------------------------------------------------------ verify

struct SuiteRun {
  std::string suite;
  Report report;
};

int cmd_verify(const Options& o, const std::vector<std::string>& suites_opt) {
  validate_common(o);
  std::vector<std::pair<int, int>> models;
  if (o.model.empty()) models = {{1, 1}, {2, 1}, {2, 2}};
  else models = {parse_model(o.model)};
  std::vector<std::string> suites = suites_opt.empty() ? suite_names() : suites_opt;
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw BadConfig("unknown suite '" + s + "'");

  SuiteConfig cfg;
  cfg.seed = resolve_seed(o);
  cfg.samples = o.samples;
  cfg.tol_exact = o.tol_exact;
  cfg.tol_fd = o.tol_fd;
  cfg.threads = thread_count(o);
  cfg.lambdas = checked_lambdas(o.lambda, true);

  const auto start = std::chrono::steady_clock::now();
  std::vector<SuiteRun> runs;
  for (auto [p, q] : models) {
    const AlgebraModel model(p, q);
    for (const auto& s : suites) {
      if (s == "sl2" && (p != 1 || q != 1)) {
        if (!suites_opt.empty() && models.size() == 1) throw BadConfig("suite sl2 needs --model 1,1");
        continue;
      }
      runs.push_back({s, run_suite(s, model, cfg)});
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool pass = true;
  size_t total = 0, failed = 0;
  for (const auto& r : runs) {
    pass = pass && r.report.pass();
    total += r.report.checks.size();
    failed += r.report.failures().size();
  }

  std::ostringstream os;
  if (o.format == "json") {
    json j;
    j["command"] = "verify";
    j["seed"] = cfg.seed;
    j["samples"] = cfg.samples;
    j["tol_exact"] = cfg.tol_exact;
    j["tol_fd"] = cfg.tol_fd;
    j["models"] = json::array();
    for (auto [p, q] : models) j["models"].push_back(AlgebraModel(p, q).label());
    j["lambdas"] = json::array();
    for (cplx l : cfg.lambdas) j["lambdas"].push_back({l.real(), l.imag()});
    j["pass"] = pass;
    j["checks_total"] = total;
    j["checks_failed"] = failed;
    j["checks"] = json::array();
    for (const auto& r : runs)
      for (const auto& c : r.report.checks) j["checks"].push_back(check_to_json(c, r.suite));
    j["wall_seconds"] = wall;
    os << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    os << "suite,model,id,anchor,max_residual,tolerance,pass,samples\n";
    for (const auto& r : runs)
      for (const auto& c : r.report.checks)
        os << r.suite << "," << csv_escape(c.model) << "," << csv_escape(c.id) << "," << csv_escape(c.anchor) << ","
           << fmt(c.max_residual) << "," << fmt(c.tolerance) << "," << (c.pass ? "true" : "false") << ","
           << c.samples << "\n";
  } else {
    for (const auto& r : runs) {
      const std::string model = r.report.checks.empty() ? "" : r.report.checks.front().model;
      os << "== " << r.suite << " [" << model << "] " << (r.report.pass() ? "PASS" : "FAIL") << "\n";
      for (const auto& c : r.report.checks) {
        char line[512];
        std::snprintf(line, sizeof line, "  %s  %-36s %11s <= %-8s n=%-5d %s\n", c.pass ? "ok  " : "FAIL",
                      c.id.c_str(), fmt(c.max_residual, 3).c_str(), fmt(c.tolerance, 2).c_str(), c.samples,
                      c.anchor.c_str());
        os << line;
      }
    }
    os << (pass ? "PASS" : "FAIL") << ": " << (total - failed) << "/" << total << " checks passed, seed " << cfg.seed
       << ", " << fmt(wall, 3) << " s\n";
  }
  emit(o, os.str());
  return pass ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ spectrum

// Distinct pairs with multiplicities, pairs sorted descending.
std::vector<std::pair<std::pair<double, double>, int>> group_pairs(std::vector<std::pair<double, double>> v,
                                                                    double tol) {
  std::sort(v.begin(), v.end(), std::greater<>());
  std::vector<std::pair<std::pair<double, double>, int>> out;
  for (const auto& p : v) {
    if (!out.empty()) {
      const auto& last = out.back().first;
      const double sc = std::max(1.0, std::abs(last.first));
      if (std::abs(last.first - p.first) <= tol * sc && std::abs(last.second - p.second) <= tol * sc) {
        ++out.back().second;
        continue;
      }
    }
    out.push_back({p, 1});
  }
  return out;
}

int cmd_spectrum(const Options& o, const std::string& coeffs_s, bool rotate) {
  validate_common(o);
  if (coeffs_s.empty()) throw BadConfig("--coeffs is required");
  const auto [p, q] = o.model.empty() ? std::pair<int, int>{1, 1} : parse_model(o.model);
  const AlgebraModel model(p, q);
  const std::vector<double> coeffs = parse_real_list(coeffs_s);
  if (int(coeffs.size()) != model.rank())
    throw BadConfig("need " + std::to_string(model.rank()) + " coefficients for " + model.label());
  Mat z = a0_element(model, coeffs);
  if (rotate) {
    Rng rng(stream_seed(resolve_seed(o), 0));
    z = conj_by(random_k0(model, rng), z);
  }
  const auto got = group_pairs(spectrum_pairs(spectrum_m0(model, z)), 1e-7);
  const auto pred = group_pairs(predicted_spectrum(model, coeffs), 1e-7);

  Table t;
  t.command = "spectrum";
  t.meta["model"] = model.label();
  t.meta["coeffs"] = coeffs;
  t.cols = {"nu1", "nu2", "multiplicity", "predicted_nu1", "predicted_nu2", "predicted_multiplicity", "residual"};
  bool ok = got.size() == pred.size();
  for (size_t k = 0; k < std::max(got.size(), pred.size()); ++k) {
    std::vector<json> row(7, nullptr);
    if (k < got.size()) row[0] = got[k].first.first, row[1] = got[k].first.second, row[2] = got[k].second;
    if (k < pred.size()) row[3] = pred[k].first.first, row[4] = pred[k].first.second, row[5] = pred[k].second;
    if (k < got.size() && k < pred.size()) {
      const double sc = std::max(1.0, std::abs(pred[k].first.first));
      const double r = std::max(std::abs(got[k].first.first - pred[k].first.first),
                                std::abs(got[k].first.second - pred[k].first.second)) / sc;
      row[6] = r;
      ok = ok && r <= o.tol_exact && got[k].second == pred[k].second;
    }
    t.rows.push_back(row);
  }
  t.meta["pass"] = ok;
  emit(o, render(t, o.format));
  return ok ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ sl2

const AlgebraModel& sl2_model(const Options& o) {
  if (!o.model.empty() && parse_model(o.model) != std::pair<int, int>{1, 1})
    throw BadConfig("sl2 commands need --model 1,1");
  static const AlgebraModel m(1, 1);
  return m;
}

void push_coords(std::vector<json>& row, const Mat& m) {
  const Sl2Coords k = sl2_coords(m);
  for (cplx v : {k.a, k.b, k.c}) {
    row.push_back(v.real() + 0.0);
    row.push_back(v.imag() + 0.0);
  }
}

int cmd_sl2_classify(const Options& o, const std::string& input) {
  validate_common(o);
  sl2_model(o);
  if (input.empty()) throw BadConfig("--input is required");
  json j;
  try {
    if (input == "-") {
      j = json::parse(std::cin);
    } else {
      std::ifstream f(input);
      if (!f) throw BadConfig("cannot read " + input);
      j = json::parse(f);
    }
  } catch (const json::exception& e) {
    throw BadConfig(std::string("malformed JSON: ") + e.what());
  }
  const std::vector<Mat> mats = parse_sl2_input(j);
  Table t;
  t.command = "sl2 classify";
  t.cols = {"index", "A_re", "A_im", "B_re", "B_im", "C_re", "C_im", "f", "class", "closed", "re_A", "absB_minus_absC"};
  for (size_t i = 0; i < mats.size(); ++i) {
    Sl2OrbitClass cls;
    try {
      cls = classify_orbit(mats[i]);
    } catch (const std::invalid_argument& e) {
      throw BadConfig("matrix " + std::to_string(i) + ": " + e.what());
    }
    std::vector<json> row{int(i)};
    push_coords(row, mats[i]);
    row.insert(row.end(), {num(cls.f), sl2_class_name(cls.tag), cls.closed(), num(cls.re_a), num(cls.b_minus_c)});
    t.rows.push_back(row);
  }
  emit(o, render(t, o.format));
  return kOk;
}

int cmd_sl2_critical(const Options& o, const std::string& structure, const std::string& s_grid,
                     const std::string& r_grid) {
  validate_common(o);
  const AlgebraModel& model = sl2_model(o);
  CriticalStructure which;
  if (structure == "J1") which = CriticalStructure::J1;
  else if (structure == "J3") which = CriticalStructure::J3;
  else throw BadConfig("--structure must be J1 or J3");
  const auto rows = critical_set(model, which, parse_grid(s_grid), parse_grid(r_grid));
  Table t;
  t.command = "sl2 critical";
  t.meta["structure"] = structure;
  t.cols = {"family", "s", "c", "r", "A_re", "A_im", "B_re", "B_im", "C_re", "C_im", "f", "f_predicted", "f_stated",
            "residual"};
  bool ok = true;
  for (const auto& r : rows) {
    std::vector<json> row{r.family, r.s, r.c, r.r};
    push_coords(row, r.m);
    const double res = residual(r.f, r.f_predicted);
    ok = ok && res <= o.tol_exact;
    row.insert(row.end(), {num(r.f), num(r.f_predicted), num(r.f_stated), num(res)});
    t.rows.push_back(row);
  }
  t.meta["pass"] = ok;
  emit(o, render(t, o.format));
  return ok ? kOk : kCheckFailed;
}

int cmd_sl2_pushforward(const Options& o, const std::string& r_grid, const std::string& c_list) {
  validate_common(o);
  const AlgebraModel& model = sl2_model(o);
  std::vector<cplx> lambdas = checked_lambdas(o.lambda, true);
  if (lambdas.empty()) lambdas = {0.5};
  for (cplx l : lambdas)
    if (!(std::abs(l) < 1.0)) throw BadConfig("pushforward needs 0 < |lambda| < 1");
  const std::vector<double> rs = parse_grid(r_grid);
  const std::vector<double> cs = parse_real_list(c_list);
  Table t;
  t.command = "sl2 pushforward";
  t.cols = {"lambda_re", "lambda_im", "c", "r", "s_prime", "r_prime", "A_re", "A_im", "B_re", "B_im", "C_re", "C_im",
            "f", "f_closed", "f_residual", "point_residual", "class", "re_A"};
  bool ok = true;
  for (cplx l : lambdas)
    for (double c : cs)
      for (double r : rs) {
        const PushforwardRow pr = pushforward_critical(model, l, r, c);
        const double fres = residual(pr.f, pr.f_closed);
        ok = ok && fres <= o.tol_exact && pr.point_residual <= 10 * o.tol_exact;
        std::vector<json> row{l.real(), l.imag(), c, r, pr.s_prime, pr.r_prime};
        push_coords(row, pr.m);
        row.insert(row.end(), {num(pr.f), num(pr.f_closed), num(fres), num(pr.point_residual),
                               sl2_class_name(pr.cls.tag), num(pr.cls.re_a)});
        t.rows.push_back(row);
      }
  t.meta["pass"] = ok;
  emit(o, render(t, o.format));
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hksym: numerical checks for hyperkahler structures on complexified su(p,q) orbits"};
  app.require_subcommand(1);

  Options vo, so, co, ko, po;
  std::vector<std::string> suites;
  std::string coeffs, input, structure = "J1", s_grid = "0:pi/2:16", r_grid = "-2:2:41", pr_grid = "-2:2:41",
                              c_list = "0";
  bool rotate = false;

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify, vo);
  verify->add_option("--suite", suites, "restrict to these suites (repeatable)");

  auto* spectrum = app.add_subcommand("spectrum", "eigenpairs of (ad_Z^2, ad_JZ^2) on m_0 next to predictions");
  add_common(spectrum, so, false);
  spectrum->add_option("--coeffs", coeffs, "a_0 coefficients, one per strongly orthogonal root");
  spectrum->add_flag("--rotate", rotate, "conjugate Z by a seeded random element of K_0");

  auto* sl2 = app.add_subcommand("sl2", "SL(2) tables");
  sl2->require_subcommand(1);
  auto* classify = sl2->add_subcommand("classify", "classify su(1,1) orbit points");
  add_common(classify, co, false);
  classify->add_option("--input", input, "JSON file with matrices, or - for stdin");
  auto* critical = sl2->add_subcommand("critical", "moment-critical families");
  add_common(critical, ko, false);
  critical->add_option("--structure", structure, "J1 or J3");
  critical->add_option("--s-grid", s_grid, "a:b:n, pi allowed");
  critical->add_option("--r-grid", r_grid, "a:b:n");
  auto* push = sl2->add_subcommand("pushforward", "image of the J3-critical fibre under the deformation");
  add_common(push, po);
  push->add_option("--r-grid", pr_grid, "a:b:n");
  push->add_option("--c", c_list, "comma list of phase parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  try {
    if (*verify) return cmd_verify(vo, suites);
    if (*spectrum) return cmd_spectrum(so, coeffs, rotate);
    if (*classify) return cmd_sl2_classify(co, input);
    if (*critical) return cmd_sl2_critical(ko, structure, s_grid, r_grid);
    if (*push) return cmd_sl2_pushforward(po, pr_grid, c_list);
  } catch (const BadConfig& e) {
    std::cerr << "hksym: " << e.what() << "\n";
    return kBadConfig;
  } catch (const ParseError& e) {
    std::cerr << "hksym: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "hksym: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "hksym: error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kBadConfig;
}
