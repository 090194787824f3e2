#pragma once

#include "hksym/lie_model.hpp"
#include "hksym/report.hpp"

#include <complex>
#include <functional>
#include <cstdint>
#include <string>
#include <vector>

namespace hksym {

struct SuiteConfig {
  std::uint64_t seed = 42;
  /// 0 keeps each suite's default sample count.
  int samples = 0;
  double tol_exact = 1e-9;
  double tol_fd = 1e-5;
  /// Empty keeps the default lambda sets.
  std::vector<cplx> lambdas;
  int threads = 1;
};

/// Registered suite names in run order.
const std::vector<std::string>& suite_names();

/// Runs one named suite; "sl2" ignores the model and uses su(1,1).
Report run_suite(const std::string& name, const AlgebraModel& model, const SuiteConfig& cfg);
/// Every suite that applies to the model ("sl2" only for su(1,1)).
Report run_all(const AlgebraModel& model, const SuiteConfig& cfg);

/// Calls fn(i) for i in [0, n) over up to `threads` workers; fn must only touch slot i.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace hksym
