#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cantor {

/// Outcome of one verification pass. Numbers are carried as decimal strings.
struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::size_t samples = 0;
  std::string worst_ratio;
  bool pass = true;
  /// Serialized failing samples, at most a handful.
  std::vector<std::string> failures;
  /// Check-specific summary values (min/max ratios and the like).
  std::vector<std::pair<std::string, std::string>> summary;

  void fail(std::string sample) {
    pass = false;
    if (failures.size() < 16) failures.push_back(std::move(sample));
  }
};

/// One report over several sub-checks: samples add up, pass is the conjunction,
/// worst_ratio is the largest sub-check worst ratio, and summaries, parameters
/// and failures are prefixed with the sub-check name.
CheckReport merge_reports(std::string check, const std::vector<CheckReport>& parts);

}  // namespace cantor
