#include "hksym/report.hpp"

#include <algorithm>
#include <cmath>

namespace hksym {

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::vector<Check> Report::failures() const {
  std::vector<Check> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out),
               [](const Check& c) { return !c.pass; });
  return out;
}

void Tally::add(double r) {
  ++count_;
  if (std::isnan(max_)) return;
  if (std::isnan(r) || r > max_) max_ = r;
}

void Tally::merge(const Tally& other) {
  if (other.count_ == 0) return;
  count_ += other.count_ - 1;
  add(other.max_);
}

Check Tally::finish(std::string id, std::string anchor, double tol, std::string model) const {
  Check c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.model = std::move(model);
  c.max_residual = max_;
  c.tolerance = tol;
  c.pass = count_ > 0 && max_ <= tol;
  c.samples = count_;
  return c;
}

}  // namespace hksym
