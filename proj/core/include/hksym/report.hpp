#pragma once

#include <string>
#include <vector>

namespace hksym {

struct Check {
  std::string id;
  std::string anchor;
  std::string model;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  int samples = 0;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  double wall_seconds = 0.0;

  bool pass() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void merge(const Report& other);
  /// Failing checks only.
  std::vector<Check> failures() const;
};

/// Running maximum of residuals; a NaN residual poisons the check.
class Tally {
 public:
  void add(double r);
  /// Combine with a tally filled elsewhere (order-independent).
  void merge(const Tally& other);
  double max() const { return max_; }
  int count() const { return count_; }
  Check finish(std::string id, std::string anchor, double tol, std::string model = {}) const;

 private:
  double max_ = 0.0;
  int count_ = 0;
};

}  // namespace hksym
