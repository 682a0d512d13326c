#include "cantor/real.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "cantor/error.hpp"

namespace cantor {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionExhausted: return "precision-exhausted";
    case ErrorCode::InvalidGamma: return "invalid-gamma";
    case ErrorCode::BracketInvalid: return "bracket-invalid";
    case ErrorCode::TailNotSummable: return "tail-not-summable";
    case ErrorCode::UndecidableTail: return "undecidable-tail";
    case ErrorCode::PolarSet: return "polar-set";
    case ErrorCode::GapCollapse: return "gap-collapse";
    case ErrorCode::BoundViolated: return "bound-violated";
    case ErrorCode::TableExhausted: return "table-exhausted";
    case ErrorCode::NotACover: return "not-a-cover";
    case ErrorCode::DepthExceeded: return "depth-exceeded";
    case ErrorCode::Breakdown: return "breakdown";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

Real::Real(Bits bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Bits bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  value_[0] = other.value_[0];
  mpfr_init2(other.value_, MPFR_PREC_MIN);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_double(double value, Bits bits) {
  Real r(bits);
  mpfr_set_d(r.value_, value, MPFR_RNDN);
  return r;
}

Real Real::parse(std::string_view text, Bits bits, mpfr_rnd_t rnd, int* ternary) {
  Real r(bits);
  std::string buffer(text);
  char* end = nullptr;
  const int t = mpfr_strtofr(r.value_, buffer.c_str(), &end, 10, rnd);
  if (buffer.empty() || end != buffer.c_str() + buffer.size() || !r.is_finite()) {
    throw Error(ErrorCode::Config, "not a decimal number: '" + buffer + "'");
  }
  if (ternary) *ternary = t;
  return r;
}

Real Real::pow2(long k, Bits bits) {
  Real r(bits);
  mpfr_set_ui_2exp(r.value_, 1, k, MPFR_RNDN);
  return r;
}

Real Real::rounded(Bits bits, mpfr_rnd_t rnd) const {
  Real r(bits);
  mpfr_set(r.value_, value_, rnd);
  return r;
}

std::string Real::to_string(int digits, mpfr_rnd_t rnd) const {
  char* text = nullptr;
  mpfr_asprintf(&text, "%.*R*e", digits > 1 ? digits - 1 : 0, rnd, value_);
  std::string out(text);
  mpfr_free_str(text);
  return out;
}

std::string Real::to_string() const { return to_string(round_trip_digits(bits())); }

int round_trip_digits(Bits bits) {
  return 1 + static_cast<int>(std::ceil(static_cast<double>(bits) * std::log10(2.0)));
}

Real Real::operator-() const {
  Real r(bits());
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

namespace {

Bits wider(const Real& a, const Real& b) { return a.bits() > b.bits() ? a.bits() : b.bits(); }

}  // namespace

Real add(const Real& a, const Real& b, Bits bits, mpfr_rnd_t rnd) {
  Real r(bits);
  mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

Real sub(const Real& a, const Real& b, Bits bits, mpfr_rnd_t rnd) {
  Real r(bits);
  mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

Real mul(const Real& a, const Real& b, Bits bits, mpfr_rnd_t rnd) {
  Real r(bits);
  mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

Real div(const Real& a, const Real& b, Bits bits, mpfr_rnd_t rnd) {
  Real r(bits);
  mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

Real operator+(const Real& a, const Real& b) { return add(a, b, wider(a, b), MPFR_RNDN); }
Real operator-(const Real& a, const Real& b) { return sub(a, b, wider(a, b), MPFR_RNDN); }
Real operator*(const Real& a, const Real& b) { return mul(a, b, wider(a, b), MPFR_RNDN); }
Real operator/(const Real& a, const Real& b) { return div(a, b, wider(a, b), MPFR_RNDN); }

Real abs(const Real& x) {
  Real r(x.bits());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

#define CANTOR_UNARY(name, fn)                     \
  Real name(const Real& x, mpfr_rnd_t rnd) {       \
    Real r(x.bits());                              \
    fn(r.raw(), x.raw(), rnd);                     \
    return r;                                      \
  }

CANTOR_UNARY(sqrt, mpfr_sqrt)
CANTOR_UNARY(exp, mpfr_exp)
CANTOR_UNARY(exp2, mpfr_exp2)
CANTOR_UNARY(log, mpfr_log)
CANTOR_UNARY(log2, mpfr_log2)

#undef CANTOR_UNARY

Real ldexp(const Real& x, long k) {
  Real r(x.bits());
  mpfr_mul_2si(r.raw(), x.raw(), k, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real const_log2(Bits bits, mpfr_rnd_t rnd) {
  Real r(bits);
  mpfr_const_log2(r.raw(), rnd);
  return r;
}

}  // namespace cantor
