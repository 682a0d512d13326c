#include "cantor/report.hpp"

#include <optional>

#include "cantor/real.hpp"

namespace cantor {

CheckReport merge_reports(std::string check, const std::vector<CheckReport>& parts) {
  CheckReport out;
  out.check = std::move(check);
  std::optional<Real> worst;
  for (const CheckReport& part : parts) {
    const std::string prefix = part.check + ".";
    for (const auto& [k, v] : part.parameters) out.parameters.emplace_back(prefix + k, v);
    for (const auto& [k, v] : part.summary) out.summary.emplace_back(prefix + k, v);
    if (!part.worst_ratio.empty()) out.summary.emplace_back(prefix + "worst_ratio", part.worst_ratio);
    out.samples += part.samples;
    if (!part.pass) out.pass = false;
    for (const auto& f : part.failures) {
      if (out.failures.size() < 16) out.failures.push_back(part.check + ": " + f);
    }
    if (!part.worst_ratio.empty()) {
      Real value = Real::parse(part.worst_ratio, 64);
      if (!worst || value > *worst) {
        worst = value;
        out.worst_ratio = part.worst_ratio;
      }
    }
  }
  return out;
}

}  // namespace cantor
