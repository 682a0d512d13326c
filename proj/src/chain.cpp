#include "cantor/chain.hpp"

#include <string>

#include "cantor/error.hpp"

namespace cantor {

Ball r_value(long s, const GammaSpec& spec, Bits bits) {
  const Bits wp = bits + 2 * s + 16;  // squaring doubles the relative error per level
  Ball r(1, wp);
  for (long k = 1; k <= s; ++k) r = spec.gamma(k, wp) * sqr(r);
  return r.rounded(bits);
}

Ball delta_value(long s, const GammaSpec& spec, Bits bits) {
  const Bits wp = bits + 16;
  Ball d(1, wp);
  for (long k = 1; k <= s; ++k) d = d * spec.gamma(k, wp);
  return d.rounded(bits);
}

PolynomialChain::PolynomialChain(const GammaSpec& spec, long max_level, Bits bits) : bits_(bits) {
  const Bits wp = bits + 2 * max_level + 16;
  Ball r(1, wp);
  r_.reserve(max_level);
  for (long k = 1; k <= max_level; ++k) {
    r = spec.gamma(k, wp) * sqr(r);
    r_.push_back(r.rounded(bits));
  }
}

CertifiedValue PolynomialChain::evaluate(const Real& x, long steps) const {
  if (steps < 0 || steps > max_level()) {
    throw Error(ErrorCode::Config, "chain evaluated beyond its level: " + std::to_string(steps));
  }
  const Ball xb = Ball(x).rounded(bits_);
  Ball u = xb * (xb - Ball(1, bits_));
  for (long k = 1; k <= steps; ++k) u = u * (u + r_[k - 1]);
  return u;
}

CertifiedValue eval_chain(const Real& x, long s, const GammaSpec& spec, const PrecisionContext& ctx) {
  return PolynomialChain(spec, s, ctx.bits()).evaluate(x, s);
}

CertifiedValue eval_chain(const Real& x, long s, const GammaSpec& spec, PrecisionContext ctx, const Real& tol) {
  for (;;) {
    CertifiedValue v = eval_chain(x, s, spec, ctx);
    if (v.rad() <= tol) return v;
    ctx = ctx.escalated();
  }
}

}  // namespace cantor
