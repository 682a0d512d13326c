#include "cantor/precision.hpp"

#include <algorithm>
#include <string>

#include "cantor/error.hpp"

namespace cantor {

PrecisionContext::PrecisionContext(Bits bits, Bits max_bits, int escalation_factor)
    : bits_(bits), max_bits_(max_bits), factor_(escalation_factor) {
  if (bits < MPFR_PREC_MIN || max_bits < bits || max_bits > MPFR_PREC_MAX) {
    throw Error(ErrorCode::Config, "precision bits must satisfy 2 <= bits <= max_bits");
  }
  if (escalation_factor < 2) throw Error(ErrorCode::Config, "escalation factor must be >= 2");
}

PrecisionContext PrecisionContext::escalated() const {
  if (!can_escalate()) {
    throw Error(ErrorCode::PrecisionExhausted, "reached max_bits=" + std::to_string(max_bits_));
  }
  PrecisionContext next = *this;
  next.bits_ = std::min<Bits>(bits_ * factor_, max_bits_);
  return next;
}

PrecisionContext PrecisionContext::at_least(Bits bits) const {
  PrecisionContext next = *this;
  next.bits_ = std::clamp<Bits>(std::max(bits_, bits), bits_, max_bits_);
  return next;
}

}  // namespace cantor
