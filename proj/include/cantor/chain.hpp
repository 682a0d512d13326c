#pragma once

#include <vector>

#include "cantor/ball.hpp"
#include "cantor/gamma_spec.hpp"
#include "cantor/precision.hpp"

namespace cantor {

/// Certified r_s = gamma_s r_{s-1}^2 with r_0 = 1.
Ball r_value(long s, const GammaSpec& spec, Bits bits);
/// Certified delta_s = gamma_1 ... gamma_s with delta_0 = 1.
Ball delta_value(long s, const GammaSpec& spec, Bits bits);

/// The iterated polynomials P_2(x) = x(x-1), P_{2^{k+1}} = P_{2^k}(P_{2^k} + r_k),
/// with r_1..r_{max_level} precomputed at a fixed precision.
class PolynomialChain {
 public:
  PolynomialChain(const GammaSpec& spec, long max_level, Bits bits);

  Bits bits() const noexcept { return bits_; }
  long max_level() const noexcept { return static_cast<long>(r_.size()); }
  /// r_k for 1 <= k <= max_level.
  const Ball& r(long k) const { return r_.at(k - 1); }

  /// P_{2^{steps+1}}(x): u_1 = x(x-1), then `steps` updates u <- u(u + r_k).
  CertifiedValue evaluate(const Real& x, long steps) const;

 private:
  Bits bits_;
  std::vector<Ball> r_;
};

/// P_{2^{s+1}}(x) at the context precision.
CertifiedValue eval_chain(const Real& x, long s, const GammaSpec& spec, const PrecisionContext& ctx);
/// Same, escalating precision until the error radius is at most `tol`.
/// Throws precision-exhausted when max_bits is not enough.
CertifiedValue eval_chain(const Real& x, long s, const GammaSpec& spec, PrecisionContext ctx, const Real& tol);

}  // namespace cantor
