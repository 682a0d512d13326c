#pragma once

#include "cantor/real.hpp"

namespace cantor {

/// Working precision with an escalation policy. Escalation never lowers `bits`
/// and never exceeds `max_bits`.
class PrecisionContext {
 public:
  static constexpr Bits kDefaultBits = 128;
  static constexpr Bits kDefaultMaxBits = 8192;

  PrecisionContext() = default;
  PrecisionContext(Bits bits, Bits max_bits, int escalation_factor = 2);

  Bits bits() const noexcept { return bits_; }
  Bits max_bits() const noexcept { return max_bits_; }
  int escalation_factor() const noexcept { return factor_; }

  bool can_escalate() const noexcept { return bits_ < max_bits_; }
  /// Next precision level; throws precision-exhausted at the cap.
  PrecisionContext escalated() const;
  /// Same cap, at least `bits` (clamped to the cap).
  PrecisionContext at_least(Bits bits) const;

 private:
  Bits bits_ = kDefaultBits;
  Bits max_bits_ = kDefaultMaxBits;
  int factor_ = 2;
};

}  // namespace cantor
