#include "suncs/report.hpp"

#include <algorithm>
#include <cmath>

namespace suncs {

Check& VerificationReport::bound(std::string name, double value, double threshold, std::string detail) {
  const bool ok = std::isfinite(value) && value <= threshold;
  checks_.push_back({std::move(name), value, threshold, ok, 0, std::move(detail)});
  return checks_.back();
}

Check& VerificationReport::flag(std::string name, bool pass, std::string detail) {
  checks_.push_back({std::move(name), pass ? 0.0 : 1.0, 0.0, pass, 0, std::move(detail)});
  return checks_.back();
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (auto c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

const Check* VerificationReport::find(const std::string& name) const {
  const auto it = std::find_if(checks_.begin(), checks_.end(), [&](const Check& c) { return c.name == name; });
  return it == checks_.end() ? nullptr : &*it;
}

bool VerificationReport::pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

double VerificationReport::max_value() const {
  double m = 0.0;
  for (const auto& c : checks_) m = std::max(m, c.value);
  return m;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    nlohmann::json j = {{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}};
    if (c.samples) j["samples"] = c.samples;
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  nlohmann::json out = {{"subject", subject_}, {"pass", pass()}, {"checks", std::move(checks)}};
  for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
  return out;
}

}  // namespace suncs
