#include "cantor/construction.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>

#include "cantor/error.hpp"
#include "cantor/root.hpp"

namespace cantor {
namespace {

// Chains at each precision reached while refining one level.
class ChainCache {
 public:
  ChainCache(const GammaSpec& spec, long level) : spec_(spec), level_(level) {}

  const PolynomialChain& at(Bits bits) {
    auto it = chains_.find(bits);
    if (it == chains_.end()) it = chains_.emplace(bits, PolynomialChain(spec_, level_, bits)).first;
    return it->second;
  }

 private:
  const GammaSpec& spec_;
  long level_;
  std::map<Bits, PolynomialChain> chains_;
};

// A point of (a, b) where P_{2^s} + r_s is certainly negative. Grid first, then
// bisection on the monotone helper P_{2^{s-1}} + r_{s-1}/2 whose zero is the
// minimiser of P_{2^s} on the parent interval.
Real separator(const CertifiedFunction& f, const Real& a, const Real& b, long s, ChainCache& chains,
               PrecisionContext& ctx) {
  const Real width = b - a;
  for (int depth = 1; depth <= 5; ++depth) {
    for (long k = 1; k < (1L << depth); k += 2) {
      Real x(ctx.bits());
      mpfr_mul_si(x.raw(), width.raw(), k, MPFR_RNDN);
      mpfr_div_2si(x.raw(), x.raw(), depth, MPFR_RNDN);
      mpfr_add(x.raw(), x.raw(), a.raw(), MPFR_RNDN);
      const auto sign = f(x, ctx.bits()).certified_sign();
      if (sign && *sign < 0) return x;
    }
  }
  if (s < 2) throw Error(ErrorCode::GapCollapse, "no negative grid point on level-0 interval");

  const CertifiedFunction helper = [&](const Real& x, Bits bits) {
    const PolynomialChain& chain = chains.at(bits);
    return chain.evaluate(x, s - 2) + ldexp(chain.r(s - 1), -1);
  };
  Real lo = a, hi = b;
  const int sign_lo = certified_sign_at(helper, lo, ctx);
  for (Bits iter = 0; iter < ctx.max_bits(); ++iter) {
    Real mid = ldexp(lo + hi, -1);
    const auto sign = f(mid, ctx.bits()).certified_sign();
    if (sign && *sign < 0) return mid;
    if (certified_sign_at(helper, mid, ctx) == sign_lo) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  throw Error(ErrorCode::GapCollapse, "could not separate the two roots at level " + std::to_string(s));
}

}  // namespace

LevelSet base_level(const GammaSpec& spec, Bits bits) {
  LevelSet level;
  level.s = 0;
  level.precision_bits = bits;
  level.intervals.push_back(BasicInterval{0, 1, Ball(0, bits), Ball(1, bits)});
  level.r = Ball(1, bits);
  level.delta = Ball(1, bits);
  (void)spec;
  return level;
}

Real endpoint_tolerance(long s, const GammaSpec& spec, const BuildOptions& options, Bits bits) {
  s = std::max(s, options.target_level);
  Real tol(64);
  const auto last = spec.last_level();
  if (!last || s + 2 <= *last) {
    tol = ldexp(delta_value(s + 2, spec, bits).lower().rounded(64, MPFR_RNDD), -4);
  } else {
    // gamma_{s+2} undefined; gamma <= 1/32 gives delta_{s+2} <= delta_s / 1024 but no lower bound,
    // so fall back to delta_s^2 / 16.
    const Real d = delta_value(s, spec, bits).lower().rounded(64, MPFR_RNDD);
    tol = ldexp(mul(d, d, 64, MPFR_RNDD), -4);
  }
  if (options.endpoint_bits > 0) tol = min(tol, Real::pow2(-static_cast<long>(options.endpoint_bits), 64));
  return tol;
}

LevelSet build_level(const LevelSet& parent, const GammaSpec& spec, const PrecisionContext& ctx,
                     const BuildOptions& options) {
  const long s = parent.s + 1;
  const Real tol = endpoint_tolerance(s, spec, options, ctx.bits());
  PrecisionContext work = ctx.at_least(-tol.exponent() + 64);

  ChainCache chains(spec, s);
  const CertifiedFunction f = [&](const Real& x, Bits bits) {
    const PolynomialChain& chain = chains.at(bits);
    return chain.evaluate(x, s - 1) + chain.r(s);
  };

  // Endpoints of E_{s-1} are the zeros of P_{2^s}.
  const CertifiedFunction boundary = [&](const Real& x, Bits bits) { return chains.at(bits).evaluate(x, s - 1); };
  const auto sharpen = [&](const Ball& e) {
    if (e.rad() < tol) return e;
    return refine_root(boundary, {e.lower(), e.upper()}, tol, work).ball();
  };

  LevelSet level;
  level.s = s;
  level.precision_bits = work.bits();
  level.intervals.reserve(parent.intervals.size() * 2);
  for (const BasicInterval& parent_interval : parent.intervals) {
    const BasicInterval I{parent_interval.s, parent_interval.j, sharpen(parent_interval.a),
                          sharpen(parent_interval.b)};
    const Real m = separator(f, I.a.mid(), I.b.mid(), s, chains, work);
    // f > 0 left of the left child's root up to the previous interval, so the
    // lower end of a's enclosure is a valid bracket end even if it lies in the gap.
    const RootEnclosure left = refine_root(f, {I.a.lower(), m}, tol, work);
    const RootEnclosure right = refine_root(f, {m, I.b.upper()}, tol, work);
    Ball c = left.ball();
    Ball d = right.ball();
    if (!certainly_less(c, d)) {
      throw Error(ErrorCode::GapCollapse, "children of I_{" + std::to_string(I.j) + "," + std::to_string(parent.s) +
                                              "} overlap");
    }
    level.intervals.push_back(BasicInterval{s, 2 * I.j - 1, I.a, std::move(c)});
    level.intervals.push_back(BasicInterval{s, 2 * I.j, std::move(d), I.b});
  }
  level.r = r_value(s, spec, work.bits());
  level.delta = delta_value(s, spec, work.bits());
  return level;
}

std::vector<LevelSet> build_levels(const GammaSpec& spec, long max_level, const PrecisionContext& ctx,
                                   const BuildOptions& options) {
  if (max_level < 0) throw Error(ErrorCode::Config, "level must be non-negative");
  std::vector<LevelSet> levels;
  levels.reserve(max_level + 1);
  levels.push_back(base_level(spec, ctx.bits()));
  BuildOptions shared = options;
  shared.target_level = std::max(options.target_level, max_level);
  for (long s = 1; s <= max_level; ++s) levels.push_back(build_level(levels.back(), spec, ctx, shared));
  return levels;
}

Ball big_M(const GammaSpec& spec, Bits bits) {
  const Bits wp = bits + 16;
  const Ball sum = spec.sum(wp);
  return (Ball(1, wp) + exp(ldexp(sum, 4))).rounded(bits);
}

PolarityCertificate is_nonpolar(const GammaSpec& spec, Bits bits) {
  PolarityCertificate cert;
  cert.series = spec.robin(bits);
  cert.nonpolar = cert.series.converges;
  return cert;
}

Ball capacity(const GammaSpec& spec, Bits bits) {
  const RobinSeries series = spec.robin(bits + 16);
  if (!series.converges) throw Error(ErrorCode::PolarSet, "capacity 0: " + series.certificate);
  return exp(-*series.value).rounded(bits);
}

Ball capacity_partial_sum(long s, const GammaSpec& spec, Bits bits) {
  // 2^-s log(1/r_s) = sum_{k<=s} 2^-k log(1/gamma_k); the sum form avoids underflow of r_s.
  const Bits wp = bits + 16;
  Ball sum(0, wp);
  for (long k = 1; k <= s; ++k) sum -= ldexp(spec.log_gamma(k, wp), -k);
  return sum.rounded(bits);
}

CheckReport verify_length_bounds(const LevelSet& level, const Ball& M) {
  CheckReport report;
  report.check = "lengths";
  report.parameters = {{"s", std::to_string(level.s)}, {"M", M.mid().to_string(12)}};
  if (level.s == 0) {
    report.summary.push_back({"note", "level 0 excluded: l = delta_0 = 1"});
    return report;
  }
  const Ball upper = M * level.delta;
  std::optional<Ball> min_ratio, max_ratio, worst;
  for (const BasicInterval& I : level.intervals) {
    const Ball l = I.length();
    const Ball ratio = l / level.delta;
    if (!min_ratio || ratio.mid() < min_ratio->mid()) min_ratio = ratio;
    if (!max_ratio || ratio.mid() > max_ratio->mid()) max_ratio = ratio;
    // whichever side of delta < l < M delta is closer to failing
    const Ball local = level.delta.mid() / l.mid() > l.mid() / upper.mid() ? level.delta / l : l / upper;
    if (!worst || local.mid() > worst->mid()) worst = local;
    ++report.samples;
    if (!(certainly_less(level.delta, l) && certainly_less(l, upper))) {
      report.fail("j=" + std::to_string(I.j) + " l/delta=" + ratio.mid().to_string(12));
    }
  }
  report.worst_ratio = worst->mid().to_string(12);
  report.summary.push_back({"min_l_over_delta", min_ratio->mid().to_string(12)});
  report.summary.push_back({"max_l_over_delta", max_ratio->mid().to_string(12)});
  return report;
}

CheckReport verify_structure(const LevelSet& level, const LevelSet* parent) {
  CheckReport report;
  report.check = "structure";
  report.parameters = {{"s", std::to_string(level.s)}};
  const auto& iv = level.intervals;
  report.samples = iv.size();
  if (iv.size() != (std::size_t{1} << level.s)) report.fail("count " + std::to_string(iv.size()));
  if (iv.empty()) return report;
  if (!(iv.front().a.is_exact() && iv.front().a.mid().is_zero())) report.fail("first interval does not start at 0");
  if (!(iv.back().b.is_exact() && iv.back().b.mid() == 1)) report.fail("last interval does not end at 1");

  for (std::size_t k = 0; k < iv.size(); ++k) {
    const BasicInterval& I = iv[k];
    if (I.j != k + 1 || I.s != level.s) report.fail("index mismatch at position " + std::to_string(k));
    if (!certainly_less(I.a, I.b)) report.fail("j=" + std::to_string(I.j) + " endpoints not separated");
    Ball limit = I.length();
    if (k > 0) {
      const Ball gap = I.a - iv[k - 1].b;
      if (!certainly_less(iv[k - 1].b, I.a)) report.fail("j=" + std::to_string(I.j) + " overlaps its left neighbour");
      if (gap.mid() < limit.mid()) limit = gap;
    }
    if (k + 1 < iv.size()) {
      const Ball gap = iv[k + 1].a - I.b;
      if (gap.mid() < limit.mid()) limit = gap;
    }
    const Real bound = ldexp(limit.lower(), -3);
    if (!(I.a.rad() < bound && I.b.rad() < bound)) {
      report.fail("j=" + std::to_string(I.j) + " endpoint radius exceeds min(gap, length)/8");
    }
  }
  if (parent) {
    for (std::size_t k = 0; k < parent->intervals.size() && 2 * k + 1 < iv.size(); ++k) {
      const BasicInterval& P = parent->intervals[k];
      const BasicInterval& left = iv[2 * k];
      const BasicInterval& right = iv[2 * k + 1];
      const bool nested = left.a.identical(P.a) && right.b.identical(P.b) && certainly_less(left.b, P.b) &&
                          certainly_less(P.a, right.a);
      if (!nested) report.fail("children of parent j=" + std::to_string(P.j) + " not nested");
    }
  }
  return report;
}

}  // namespace cantor
