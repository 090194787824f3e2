#pragma once

#include "hksym/linalg.hpp"
#include "hksym/report.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hksym::cli {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Real scalar with an optional "pi" factor: "0.5", "-pi", "pi/2", "3*pi/4", "2pi".
double parse_real(const std::string& s);
/// "a+bi", "2i", "-i", "1.5" or polar "r@theta" (theta may use pi).
cplx parse_complex(const std::string& s);
std::vector<cplx> parse_complex_list(const std::string& s);
std::vector<double> parse_real_list(const std::string& s);
/// "a:b:n" gives n evenly spaced points from a to b inclusive; n = 1 gives {a}.
std::vector<double> parse_grid(const std::string& s);
/// "p,q" with p, q >= 1.
std::pair<int, int> parse_model(const std::string& s);
std::uint64_t parse_seed(const std::string& s);

/// A 2x2 complex matrix from JSON: {"matrix": [[e, e], [e, e]]} or {"A": e, "B": e, "C": e}
/// where e is a number or [re, im]. A top-level array yields several matrices.
std::vector<Mat> parse_sl2_input(const nlohmann::json& j);

nlohmann::json check_to_json(const Check& c, const std::string& suite);
std::string csv_escape(const std::string& s);

}  // namespace hksym::cli
