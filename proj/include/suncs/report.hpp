#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace suncs {

struct Check {
  std::string name;
  double value = 0.0;      // residual, deviation, or other measured quantity
  double threshold = 0.0;  // pass bound for `value`
  bool pass = false;
  std::size_t samples = 0;
  std::string detail;
};

// Named residuals with their tolerances and verdicts.
class VerificationReport {
 public:
  explicit VerificationReport(std::string subject = {}) : subject_(std::move(subject)) {}

  // Passes iff value <= threshold.
  Check& bound(std::string name, double value, double threshold, std::string detail = {});
  Check& flag(std::string name, bool pass, std::string detail = {});
  void merge(const VerificationReport& other, const std::string& prefix = {});

  const std::string& subject() const { return subject_; }
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;
  bool pass() const;
  double max_value() const;

  nlohmann::json extra = nlohmann::json::object();
  nlohmann::json to_json() const;

 private:
  std::string subject_;
  std::vector<Check> checks_;
};

}  // namespace suncs
