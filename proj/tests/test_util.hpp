#pragma once

#include <optional>
#include <vector>

#include "cantor/construction.hpp"
#include "cantor/error.hpp"

namespace cantor::testing {

inline const GammaSpec& default_gamma() {
  static const GammaSpec spec = GammaSpec::parse("exp(-8*s+4)");
  return spec;
}

/// Levels 0..8 of the default rule, built once per test binary.
inline const std::vector<LevelSet>& default_levels() {
  static const std::vector<LevelSet> levels = build_levels(default_gamma(), 8, PrecisionContext{});
  return levels;
}

template <class F>
std::optional<ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

}  // namespace cantor::testing
