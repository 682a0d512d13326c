#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace cantor {

using Bits = mpfr_prec_t;

/// Owning wrapper around an MPFR number with its own mantissa precision.
///
/// Arithmetic operators round to nearest and produce a result whose precision
/// is the larger of the operand precisions. Directed rounding is available
/// through the free functions taking an explicit `mpfr_rnd_t`.
class Real {
 public:
  explicit Real(Bits bits = 128);
  Real(long value, Bits bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real from_double(double value, Bits bits);
  /// Parses a decimal literal. Sets `*ternary` (if given) to MPFR's ternary value.
  static Real parse(std::string_view text, Bits bits, mpfr_rnd_t rnd = MPFR_RNDN,
                    int* ternary = nullptr);
  /// 2^k exactly.
  static Real pow2(long k, Bits bits);

  mpfr_ptr raw() noexcept { return value_; }
  mpfr_srcptr raw() const noexcept { return value_; }

  Bits bits() const noexcept { return mpfr_get_prec(value_); }
  /// Copy rounded to `bits`.
  Real rounded(Bits bits, mpfr_rnd_t rnd = MPFR_RNDN) const;

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }
  /// Exponent e with 2^(e-1) <= |x| < 2^e; only meaningful for nonzero finite values.
  long exponent() const noexcept { return mpfr_get_exp(value_); }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  long to_long(mpfr_rnd_t rnd = MPFR_RNDZ) const { return mpfr_get_si(value_, rnd); }
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;
  /// Enough digits to round-trip exactly at this precision.
  std::string to_string() const;

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

 private:
  mpfr_t value_;
};

/// Decimal digits needed so that `bits` of mantissa survive a text round trip.
int round_trip_digits(Bits bits);

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);

Real add(const Real& a, const Real& b, Bits bits, mpfr_rnd_t rnd);
Real sub(const Real& a, const Real& b, Bits bits, mpfr_rnd_t rnd);
Real mul(const Real& a, const Real& b, Bits bits, mpfr_rnd_t rnd);
Real div(const Real& a, const Real& b, Bits bits, mpfr_rnd_t rnd);

Real abs(const Real& x);
Real sqrt(const Real& x, mpfr_rnd_t rnd = MPFR_RNDN);
Real exp(const Real& x, mpfr_rnd_t rnd = MPFR_RNDN);
Real exp2(const Real& x, mpfr_rnd_t rnd = MPFR_RNDN);
Real log(const Real& x, mpfr_rnd_t rnd = MPFR_RNDN);
Real log2(const Real& x, mpfr_rnd_t rnd = MPFR_RNDN);
/// x * 2^k, exact.
Real ldexp(const Real& x, long k);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

Real const_log2(Bits bits, mpfr_rnd_t rnd = MPFR_RNDN);

}  // namespace cantor
