#pragma once

#include <optional>
#include <string_view>

#include "cantor/real.hpp"

namespace cantor {

/// Certified real: the exact quantity lies in [mid - rad, mid + rad].
///
/// Every operation rounds the midpoint to nearest and accumulates the rounding
/// error into the radius with upward rounding, so the enclosure is rigorous and
/// not merely first-order. Radii are kept at `kRadiusBits` of precision.
class Ball {
 public:
  static constexpr Bits kRadiusBits = 64;

  explicit Ball(Bits bits = 128);
  Ball(Real mid, Real rad);
  explicit Ball(Real exact);
  Ball(long value, Bits bits);

  /// Decimal literal or ratio "p/q"; the radius covers the conversion error.
  static Ball parse(std::string_view text, Bits bits);
  /// Smallest ball containing [lo, hi].
  static Ball hull(const Real& lo, const Real& hi);
  /// Ball containing both.
  static Ball hull(const Ball& a, const Ball& b);

  const Real& mid() const noexcept { return mid_; }
  const Real& rad() const noexcept { return rad_; }
  Bits bits() const noexcept { return mid_.bits(); }

  /// Rigorous lower and upper ends of the enclosure.
  Real lower() const;
  Real upper() const;

  bool is_exact() const noexcept { return rad_.is_zero(); }
  bool contains(const Real& x) const;
  bool overlaps(const Ball& other) const;
  /// Same midpoint and radius bit for bit. Used to recognise shared endpoints.
  bool identical(const Ball& other) const;

  bool certainly_positive() const;
  bool certainly_negative() const;
  /// +1 / -1 when certified, 0 for an exact zero, nullopt when the sign is ambiguous.
  std::optional<int> certified_sign() const;

  /// Copy with the midpoint rounded to `bits`, radius widened accordingly.
  Ball rounded(Bits bits) const;
  /// Widen the radius by `extra` (rounded up).
  Ball widened(const Real& extra) const;

  Ball operator-() const;
  Ball& operator+=(const Ball& rhs);
  Ball& operator-=(const Ball& rhs);
  Ball& operator*=(const Ball& rhs);

 private:
  Real mid_;
  Real rad_;
};

Ball operator+(const Ball& a, const Ball& b);
Ball operator-(const Ball& a, const Ball& b);
Ball operator*(const Ball& a, const Ball& b);
/// Throws when the divisor's enclosure contains zero.
Ball operator/(const Ball& a, const Ball& b);
Ball sqr(const Ball& x);
Ball ldexp(const Ball& x, long k);
Ball abs(const Ball& x);

Ball exp(const Ball& x);
Ball exp2(const Ball& x);
/// Requires a certainly positive argument.
Ball log(const Ball& x);
Ball sqrt(const Ball& x);

/// Certified comparisons: true only when the relation holds for every point of both enclosures.
bool certainly_less(const Ball& a, const Ball& b);
bool certainly_less_equal(const Ball& a, const Ball& b);

}  // namespace cantor

namespace cantor {

/// Value with a rigorous error radius, as produced by the certified evaluators.
using CertifiedValue = Ball;

/// x^n for n >= 0 by repeated squaring.
Ball pow(const Ball& x, long n);

}  // namespace cantor

namespace cantor {

/// Enclosure of log 2.
Ball ball_log2(Bits bits);

}  // namespace cantor
