#pragma once

#include <utility>
#include <vector>

#include "cantor/ball.hpp"
#include "cantor/gamma_spec.hpp"
#include "cantor/report.hpp"

namespace cantor {

/// Nevanlinna-type dimension function built from delta_s = gamma_1 ... gamma_s:
///   eta(delta_s) = s, log-linear in t between consecutive knots,
///   h(t) = 2^-eta(t) on (0, 1], h(t) = 1 for t > 1.
///
/// Knots are stored as log delta_s. Evaluations below the table compute the
/// missing knots on the fly (the table itself is never mutated); a rule that
/// stops defining gamma_s raises table-exhausted.
class DimensionFunction {
 public:
  DimensionFunction(GammaSpec spec, long levels, Bits bits);

  const GammaSpec& spec() const noexcept { return spec_; }
  Bits bits() const noexcept { return bits_; }
  long levels() const noexcept { return static_cast<long>(log_delta_.size()) - 1; }

  /// log delta_s for any s >= 0.
  Ball log_delta(long s) const;
  /// delta_s.
  Ball delta(long s) const;

  /// Requires 0 < t <= 1.
  Ball eta(const Real& t) const;
  /// Requires t > 0.
  Ball h(const Real& t) const;
  /// h over an enclosure of t (h is increasing).
  Ball h(const Ball& t) const;

 private:
  GammaSpec spec_;
  Bits bits_;
  std::vector<Ball> log_delta_;
};

/// h(r) < m h(r/m) for each (r, m), with the worst ratio h(r) / (m h(r/m)).
CheckReport verify_doubling(const DimensionFunction& dim, const std::vector<std::pair<Real, Real>>& samples);

/// Knot slopes log 2 / log(1/gamma_{s+1}) <= log 2 / log 32 = 1/5 for s < levels.
CheckReport verify_knot_slopes(const DimensionFunction& dim);

}  // namespace cantor
