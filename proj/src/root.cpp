#include "cantor/root.hpp"

#include "cantor/error.hpp"

namespace cantor {

Real RootEnclosure::width() const { return sub(hi, lo, 64, MPFR_RNDU); }

int certified_sign_at(const CertifiedFunction& f, const Real& x, PrecisionContext& ctx) {
  for (;;) {
    if (const auto sign = f(x, ctx.bits()).certified_sign()) return *sign;
    ctx = ctx.escalated();
  }
}

RootEnclosure refine_root(const CertifiedFunction& f, RootEnclosure bracket, const Real& tol, PrecisionContext ctx) {
  if (!(bracket.lo < bracket.hi)) throw Error(ErrorCode::BracketInvalid, "bracket requires lo < hi");
  if (tol.sign() <= 0) throw Error(ErrorCode::Config, "tolerance must be positive");

  const int sign_lo = certified_sign_at(f, bracket.lo, ctx);
  const int sign_hi = certified_sign_at(f, bracket.hi, ctx);
  if (sign_lo == 0) {
    bracket.hi = min(bracket.hi, add(bracket.lo, tol, bracket.lo.bits() + 64, MPFR_RNDD));
    return bracket;
  }
  if (sign_hi == 0) {
    bracket.lo = max(bracket.lo, sub(bracket.hi, tol, bracket.hi.bits() + 64, MPFR_RNDU));
    return bracket;
  }
  if (sign_lo == sign_hi) throw Error(ErrorCode::BracketInvalid, "no certified sign change on the bracket");

  // Invariant: sign f(lo) == sign_lo, and f(hi) is zero or of the opposite sign.
  while (bracket.width() > tol) {
    Real mid(ctx.bits());
    mpfr_add(mid.raw(), bracket.lo.raw(), bracket.hi.raw(), MPFR_RNDN);
    mpfr_div_2ui(mid.raw(), mid.raw(), 1, MPFR_RNDN);
    if (!(bracket.lo < mid && mid < bracket.hi)) {
      ctx = ctx.escalated();
      continue;
    }
    if (certified_sign_at(f, mid, ctx) == sign_lo) {
      bracket.lo = std::move(mid);
    } else {
      bracket.hi = std::move(mid);
    }
  }
  return bracket;
}

}  // namespace cantor
