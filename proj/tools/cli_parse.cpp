#include "cli_parse.hpp"

#include "hksym/sl2.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hksym::cli {

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

double number(const std::string& s) {
  if (s.empty()) throw ParseError("empty number");
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ParseError("not a number: '" + s + "'");
  return v;
}

// product/quotient chain of numbers and "pi"; "2pi" is read as 2*pi
double factor_chain(const std::string& s) {
  if (s.empty()) throw ParseError("empty expression");
  double value = 1.0;
  char op = '*';
  size_t i = 0;
  while (i <= s.size()) {
    size_t j = s.find_first_of("*/", i);
    if (j == std::string::npos) j = s.size();
    std::string tok = s.substr(i, j - i);
    double v;
    if (tok == "pi") {
      v = std::numbers::pi;
    } else if (tok.size() > 2 && tok.compare(tok.size() - 2, 2, "pi") == 0) {
      v = number(tok.substr(0, tok.size() - 2)) * std::numbers::pi;
    } else {
      v = number(tok);
    }
    if (op == '*') value *= v;
    else {
      if (v == 0.0) throw ParseError("division by zero in '" + s + "'");
      value /= v;
    }
    if (j == s.size()) break;
    op = s[j];
    i = j + 1;
  }
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t i = 0;
  while (true) {
    const size_t j = s.find(sep, i);
    out.push_back(s.substr(i, j == std::string::npos ? std::string::npos : j - i));
    if (j == std::string::npos) break;
    i = j + 1;
  }
  return out;
}

cplx entry(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  if (e.is_string()) return parse_complex(e.get<std::string>());
  throw ParseError("matrix entry must be a number, [re, im] or a complex string");
}

Mat one_matrix(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("sl2 input must be an object or an array of objects");
  if (j.contains("matrix")) {
    const auto& m = j["matrix"];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
        m[1].size() != 2)
      throw ParseError("\"matrix\" must be 2x2");
    Mat out(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out(r, c) = entry(m[size_t(r)][size_t(c)]);
    return out;
  }
  if (j.contains("A") && j.contains("B") && j.contains("C")) return sl2_matrix(entry(j["A"]), entry(j["B"]), entry(j["C"]));
  throw ParseError("sl2 input needs \"matrix\" or \"A\", \"B\", \"C\"");
}

}  // namespace

double parse_real(const std::string& raw) {
  std::string s = strip(raw);
  if (s.empty()) throw ParseError("empty value");
  double sign = 1.0;
  while (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    if (s[0] == '-') sign = -sign;
    s.erase(0, 1);
  }
  return sign * factor_chain(s);
}

cplx parse_complex(const std::string& raw) {
  const std::string s = strip(raw);
  if (s.empty()) throw ParseError("empty complex value");
  if (const size_t at = s.find('@'); at != std::string::npos)
    return std::polar(parse_real(s.substr(0, at)), parse_real(s.substr(at + 1)));
  if (s.back() != 'i' || (s.size() >= 2 && s.substr(s.size() - 2) == "pi")) return {parse_real(s), 0.0};
  // split "a+bi" at the last sign that is not part of an exponent
  size_t cut = std::string::npos;
  for (size_t k = s.size() - 1; k > 0; --k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  const std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im = s.substr(cut == std::string::npos ? 0 : cut, std::string::npos);
  im.pop_back();
  if (im.empty() || im == "+") im = "1";
  else if (im == "-") im = "-1";
  else if (im.back() == '*') im.pop_back();
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::vector<cplx> parse_complex_list(const std::string& s) {
  std::vector<cplx> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_complex(part));
  return out;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_real(part));
  return out;
}

std::vector<double> parse_grid(const std::string& s) {
  const auto parts = split(strip(s), ':');
  if (parts.size() != 3) throw ParseError("grid must look like a:b:n, got '" + s + "'");
  const double a = parse_real(parts[0]), b = parse_real(parts[1]);
  const double n = number(parts[2]);
  if (n < 1 || n != std::floor(n) || n > 1e7) throw ParseError("grid count must be a positive integer");
  const int count = int(n);
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(count == 1 ? a : a + (b - a) * k / (count - 1));
  return out;
}

std::pair<int, int> parse_model(const std::string& s) {
  const auto parts = split(strip(s), ',');
  if (parts.size() != 2) throw ParseError("model must look like p,q");
  auto whole = [](const std::string& t) {
    const double v = number(t);
    if (v < 1 || v != std::floor(v) || v > 64) throw ParseError("model sizes must be integers in [1, 64]");
    return int(v);
  };
  return {whole(parts[0]), whole(parts[1])};
}

std::uint64_t parse_seed(const std::string& raw) {
  const std::string s = strip(raw);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw ParseError("seed must be a non-negative integer");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError("seed out of range");
  }
}

std::vector<Mat> parse_sl2_input(const nlohmann::json& j) {
  std::vector<Mat> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(one_matrix(e));
  } else {
    out.push_back(one_matrix(j));
  }
  if (out.empty()) throw ParseError("no matrices in input");
  return out;
}

nlohmann::json check_to_json(const Check& c, const std::string& suite) {
  nlohmann::json j;
  j["suite"] = suite;
  j["id"] = c.id;
  j["anchor"] = c.anchor;
  j["model"] = c.model;
  j["max_residual"] = std::isfinite(c.max_residual) ? nlohmann::json(c.max_residual) : nlohmann::json(nullptr);
  j["tolerance"] = std::isfinite(c.tolerance) ? nlohmann::json(c.tolerance) : nlohmann::json(nullptr);
  j["pass"] = c.pass;
  j["samples"] = c.samples;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace hksym::cli
