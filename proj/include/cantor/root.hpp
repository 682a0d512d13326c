#pragma once

#include <functional>

#include "cantor/ball.hpp"
#include "cantor/precision.hpp"

namespace cantor {

/// [lo, hi] with lo < hi, containing a sign change of the target function.
struct RootEnclosure {
  Real lo;
  Real hi;

  Real width() const;
  /// Midpoint with radius covering the whole enclosure.
  Ball ball() const { return Ball::hull(lo, hi); }
};

/// Certified evaluation of f at an exact point with the requested precision.
using CertifiedFunction = std::function<CertifiedValue(const Real& x, Bits bits)>;

/// Certified sign of f(x), escalating `ctx` in place while the sign is ambiguous.
int certified_sign_at(const CertifiedFunction& f, const Real& x, PrecisionContext& ctx);

/// Bisection to an enclosure of width <= tol. The signs of f at the bracket
/// ends must certify a sign change; every midpoint sign is certified, with
/// precision escalation when it is ambiguous.
RootEnclosure refine_root(const CertifiedFunction& f, RootEnclosure bracket, const Real& tol, PrecisionContext ctx);

}  // namespace cantor
