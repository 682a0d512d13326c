#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/ball.hpp"
#include "cantor/chain.hpp"
#include "cantor/gamma_spec.hpp"
#include "cantor/precision.hpp"
#include "cantor/report.hpp"

namespace cantor {

/// I_{j,s} = [a, b]. Endpoints are certified; a child shares the exact endpoint
/// enclosure with its parent, so bitwise-identical enclosures denote one point.
struct BasicInterval {
  long s = 0;
  std::uint64_t j = 1;  // 1-based
  Ball a;
  Ball b;

  Ball length() const { return b - a; }
};

/// E_s as its 2^s sorted basic intervals.
struct LevelSet {
  long s = 0;
  Bits precision_bits = 0;
  std::vector<BasicInterval> intervals;
  Ball r;
  Ball delta;

  std::size_t size() const noexcept { return intervals.size(); }
};

struct BuildOptions {
  /// When nonzero, endpoints are additionally refined to radius <= 2^-endpoint_bits.
  Bits endpoint_bits = 0;
  /// Deepest level that will be built on top of these endpoints; endpoint radii
  /// are kept below delta_{target+2}/16. Values below the level being built are ignored.
  long target_level = 0;
};

/// Level 0: the single interval [0, 1].
LevelSet base_level(const GammaSpec& spec, Bits bits);
/// Splits every interval of `parent` at the two roots of P_{2^s}(x) = -r_s.
/// Inherited endpoints coarser than the level's tolerance are re-refined (they
/// are zeros of P_{2^s}). Throws precision-exhausted or gap-collapse.
LevelSet build_level(const LevelSet& parent, const GammaSpec& spec, const PrecisionContext& ctx,
                     const BuildOptions& options = {});
/// Levels 0..max_level.
std::vector<LevelSet> build_levels(const GammaSpec& spec, long max_level, const PrecisionContext& ctx,
                                   const BuildOptions& options = {});

/// Radius bound for endpoints of a level-s set: delta_{max(s, target)+2}/16, tightened by options.
Real endpoint_tolerance(long s, const GammaSpec& spec, const BuildOptions& options, Bits bits);

/// M = 1 + exp(16 sum gamma_s). Throws tail-not-summable / undecidable-tail.
Ball big_M(const GammaSpec& spec, Bits bits);

struct PolarityCertificate {
  bool nonpolar = false;
  RobinSeries series;
};

/// K(gamma) is non-polar iff sum 2^-s log(1/gamma_s) converges.
PolarityCertificate is_nonpolar(const GammaSpec& spec, Bits bits);

/// Cap(K(gamma)) = exp(-sum 2^-k log(1/gamma_k)). Throws polar-set.
Ball capacity(const GammaSpec& spec, Bits bits);

/// 2^-s log(1/r_s), the s-th partial sum of the capacity series.
Ball capacity_partial_sum(long s, const GammaSpec& spec, Bits bits);

/// delta_s < l_{j,s} < M delta_s for every j (s >= 1), with the min/max of l/delta.
CheckReport verify_length_bounds(const LevelSet& level, const Ball& M);

/// Structural invariants: count, order, nesting in the parent, endpoint radii
/// below min(gap, length)/8, outer endpoints 0 and 1.
CheckReport verify_structure(const LevelSet& level, const LevelSet* parent);

}  // namespace cantor
