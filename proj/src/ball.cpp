#include "cantor/ball.hpp"

#include <string>

#include "cantor/error.hpp"

namespace cantor {
namespace {

constexpr Bits kRad = Ball::kRadiusBits;

// Upper bound on the error of a round-to-nearest result `mid` with MPFR ternary `t`.
void add_rounding_error(Real& rad, const Real& mid, int ternary) {
  if (ternary == 0) return;
  Real ulp(kRad);
  if (mid.is_zero()) {
    mpfr_set_ui_2exp(ulp.raw(), 1, mpfr_get_emin(), MPFR_RNDU);
  } else {
    mpfr_set_ui_2exp(ulp.raw(), 1, mid.exponent() - mid.bits(), MPFR_RNDU);
  }
  mpfr_add(rad.raw(), rad.raw(), ulp.raw(), MPFR_RNDU);
}

// |x| rounded up to radius precision.
Real abs_up(const Real& x) {
  Real r(kRad);
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDU);
  return r;
}

Bits wider(const Ball& a, const Ball& b) { return a.bits() > b.bits() ? a.bits() : b.bits(); }

template <typename Fn>
Ball monotone(const Ball& x, Fn fn, bool increasing) {
  const Bits p = x.bits();
  Real lo = x.lower();
  Real hi = x.upper();
  Real flo(p), fhi(p);
  if (increasing) {
    fn(flo.raw(), lo.raw(), MPFR_RNDD);
    fn(fhi.raw(), hi.raw(), MPFR_RNDU);
  } else {
    fn(flo.raw(), hi.raw(), MPFR_RNDD);
    fn(fhi.raw(), lo.raw(), MPFR_RNDU);
  }
  return Ball::hull(flo, fhi);
}

}  // namespace

Ball::Ball(Bits bits) : mid_(bits), rad_(kRad) {}

Ball::Ball(Real mid, Real rad) : mid_(std::move(mid)), rad_(kRad) {
  mpfr_abs(rad_.raw(), rad.raw(), MPFR_RNDU);
}

Ball::Ball(Real exact) : mid_(std::move(exact)), rad_(kRad) {}

Ball::Ball(long value, Bits bits) : mid_(bits), rad_(kRad) {
  const int t = mpfr_set_si(mid_.raw(), value, MPFR_RNDN);
  add_rounding_error(rad_, mid_, t);
}

Ball Ball::parse(std::string_view text, Bits bits) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const Ball num = parse(text.substr(0, slash), bits);
    const Ball den = parse(text.substr(slash + 1), bits);
    return num / den;
  }
  int t = 0;
  Real mid = Real::parse(text, bits, MPFR_RNDN, &t);
  Ball out(std::move(mid));
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball Ball::hull(const Real& lo, const Real& hi) {
  const Bits p = lo.bits() > hi.bits() ? lo.bits() : hi.bits();
  Real mid(p);
  mpfr_add(mid.raw(), lo.raw(), hi.raw(), MPFR_RNDN);
  mpfr_div_2ui(mid.raw(), mid.raw(), 1, MPFR_RNDN);
  Real up(kRad), down(kRad);
  mpfr_sub(up.raw(), hi.raw(), mid.raw(), MPFR_RNDU);
  mpfr_sub(down.raw(), mid.raw(), lo.raw(), MPFR_RNDU);
  Ball out(std::move(mid));
  out.rad_ = max(up, down);
  if (out.rad_.sign() < 0) out.rad_ = Real(0, kRad);
  return out;
}

Ball Ball::hull(const Ball& a, const Ball& b) {
  return hull(min(a.lower(), b.lower()), max(a.upper(), b.upper()));
}

Real Ball::lower() const {
  Real r(bits());
  mpfr_sub(r.raw(), mid_.raw(), rad_.raw(), MPFR_RNDD);
  return r;
}

Real Ball::upper() const {
  Real r(bits());
  mpfr_add(r.raw(), mid_.raw(), rad_.raw(), MPFR_RNDU);
  return r;
}

bool Ball::contains(const Real& x) const { return lower() <= x && x <= upper(); }

bool Ball::overlaps(const Ball& other) const {
  return !(upper() < other.lower() || other.upper() < lower());
}

bool Ball::identical(const Ball& other) const {
  return mid_ == other.mid_ && rad_ == other.rad_;
}

bool Ball::certainly_positive() const { return lower().sign() > 0; }
bool Ball::certainly_negative() const { return upper().sign() < 0; }

std::optional<int> Ball::certified_sign() const {
  if (mid_.is_zero() && rad_.is_zero()) return 0;
  if (certainly_positive()) return 1;
  if (certainly_negative()) return -1;
  return std::nullopt;
}

Ball Ball::rounded(Bits bits) const {
  Ball out(bits);
  const int t = mpfr_set(out.mid_.raw(), mid_.raw(), MPFR_RNDN);
  out.rad_ = rad_;
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball Ball::widened(const Real& extra) const {
  Ball out(*this);
  Real e = abs_up(extra);
  mpfr_add(out.rad_.raw(), out.rad_.raw(), e.raw(), MPFR_RNDU);
  return out;
}

Ball Ball::operator-() const {
  Ball out(*this);
  mpfr_neg(out.mid_.raw(), out.mid_.raw(), MPFR_RNDN);
  return out;
}

Ball& Ball::operator+=(const Ball& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(mid_.raw(), rhs.bits(), MPFR_RNDN);
  const int t = mpfr_add(mid_.raw(), mid_.raw(), rhs.mid_.raw(), MPFR_RNDN);
  mpfr_add(rad_.raw(), rad_.raw(), rhs.rad_.raw(), MPFR_RNDU);
  add_rounding_error(rad_, mid_, t);
  return *this;
}

Ball& Ball::operator-=(const Ball& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(mid_.raw(), rhs.bits(), MPFR_RNDN);
  const int t = mpfr_sub(mid_.raw(), mid_.raw(), rhs.mid_.raw(), MPFR_RNDN);
  mpfr_add(rad_.raw(), rad_.raw(), rhs.rad_.raw(), MPFR_RNDU);
  add_rounding_error(rad_, mid_, t);
  return *this;
}

Ball& Ball::operator*=(const Ball& rhs) {
  *this = *this * rhs;
  return *this;
}

Ball operator+(const Ball& a, const Ball& b) {
  Ball out = a.bits() >= b.bits() ? a : a.rounded(b.bits());
  out += b;
  return out;
}

Ball operator-(const Ball& a, const Ball& b) {
  Ball out = a.bits() >= b.bits() ? a : a.rounded(b.bits());
  out -= b;
  return out;
}

Ball operator*(const Ball& a, const Ball& b) {
  Real mid(wider(a, b));
  const int t = mpfr_mul(mid.raw(), a.mid().raw(), b.mid().raw(), MPFR_RNDN);
  // |ab - a'b'| <= |a| rb + |b| ra + ra rb
  Real rad(kRad), term(kRad);
  if (!b.rad().is_zero()) mpfr_mul(rad.raw(), abs_up(a.mid()).raw(), b.rad().raw(), MPFR_RNDU);
  if (!a.rad().is_zero()) {
    mpfr_mul(term.raw(), abs_up(b.mid()).raw(), a.rad().raw(), MPFR_RNDU);
    mpfr_add(rad.raw(), rad.raw(), term.raw(), MPFR_RNDU);
    mpfr_mul(term.raw(), a.rad().raw(), b.rad().raw(), MPFR_RNDU);
    mpfr_add(rad.raw(), rad.raw(), term.raw(), MPFR_RNDU);
  }
  add_rounding_error(rad, mid, t);
  return Ball(std::move(mid), std::move(rad));
}

Ball operator/(const Ball& a, const Ball& b) {
  if (!b.certainly_positive() && !b.certainly_negative()) {
    throw Error(ErrorCode::PrecisionExhausted, "division by an enclosure containing zero");
  }
  const Ball inv = monotone(b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_ui_div(r, 1, x, rnd); },
                            false);
  return a * inv;
}

Ball sqr(const Ball& x) {
  Real mid(x.bits());
  const int t = mpfr_sqr(mid.raw(), x.mid().raw(), MPFR_RNDN);
  Real rad(kRad), term(kRad);
  if (!x.rad().is_zero()) {
    mpfr_mul(rad.raw(), abs_up(x.mid()).raw(), x.rad().raw(), MPFR_RNDU);
    mpfr_mul_2ui(rad.raw(), rad.raw(), 1, MPFR_RNDU);
    mpfr_sqr(term.raw(), x.rad().raw(), MPFR_RNDU);
    mpfr_add(rad.raw(), rad.raw(), term.raw(), MPFR_RNDU);
  }
  add_rounding_error(rad, mid, t);
  return Ball(std::move(mid), std::move(rad));
}

Ball ldexp(const Ball& x, long k) {
  Real mid = ldexp(x.mid(), k);
  Real rad(kRad);
  mpfr_mul_2si(rad.raw(), x.rad().raw(), k, MPFR_RNDU);
  return Ball(std::move(mid), std::move(rad));
}

Ball abs(const Ball& x) {
  if (x.certainly_negative()) return -x;
  if (x.lower().sign() >= 0) return x;
  return Ball::hull(Real(0, x.bits()), max(abs(x.lower()), abs(x.upper())));
}

Ball exp(const Ball& x) { return monotone(x, mpfr_exp, true); }
Ball exp2(const Ball& x) { return monotone(x, mpfr_exp2, true); }

Ball log(const Ball& x) {
  if (!x.certainly_positive()) throw Error(ErrorCode::PrecisionExhausted, "log of a non-positive enclosure");
  return monotone(x, mpfr_log, true);
}

Ball sqrt(const Ball& x) {
  if (x.lower().sign() < 0) throw Error(ErrorCode::PrecisionExhausted, "sqrt of a possibly negative enclosure");
  return monotone(x, mpfr_sqrt, true);
}

bool certainly_less(const Ball& a, const Ball& b) { return a.upper() < b.lower(); }
bool certainly_less_equal(const Ball& a, const Ball& b) { return a.upper() <= b.lower(); }

}  // namespace cantor

namespace cantor {

Ball pow(const Ball& x, long n) {
  Ball result(1, x.bits());
  Ball base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = sqr(base);
  }
  return result;
}

}  // namespace cantor

namespace cantor {

Ball ball_log2(Bits bits) { return Ball::hull(const_log2(bits, MPFR_RNDD), const_log2(bits, MPFR_RNDU)); }

}  // namespace cantor
