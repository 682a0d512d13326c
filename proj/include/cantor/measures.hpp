#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "cantor/construction.hpp"
#include "cantor/dimension.hpp"
#include "cantor/report.hpp"

namespace cantor {

/// lambda_s: mass 2^-s spread uniformly over each I_{j,s}.
struct PiecewiseUniformMeasure {
  long s = 0;
  std::vector<BasicInterval> intervals;

  /// 2^-s, exact.
  Real mass() const;
  /// (2^s l_{j,s})^-1 for the k-th interval (0-based).
  Ball density(std::size_t k) const;
  /// Sum of the per-interval masses; exactly 1.
  Real total_mass() const;
  /// lambda_s([lo, hi]) by integrating the density.
  Ball integrate(const Ball& lo, const Ball& hi) const;
};

PiecewiseUniformMeasure lambda_measure(const LevelSet& level);

/// Certified bounds k * 2^-depth on mu_K(I).
struct MeasureBounds {
  std::uint64_t lower_count = 0;
  std::uint64_t upper_count = 0;
  long depth = 0;

  Real lower() const;
  Real upper() const;
  bool exact() const noexcept { return lower_count == upper_count; }
};

/// mu_K([lo, hi]) from the level-`depth` basic intervals: those certainly inside
/// give the lower bound, those possibly meeting it in more than a point the upper.
/// Since mu_K has no atoms the result is the same for open and closed intervals.
MeasureBounds mu_interval(const LevelSet& depth_level, const Ball& lo, const Ball& hi);
/// mu_K of the ball (x - r, x + r); equal to that of the closed ball.
MeasureBounds ball_measure(const LevelSet& depth_level, const Ball& x, const Real& r);

struct FrostmanSample {
  MeasureBounds mu;
  Ball h;       // h(r)
  Ball ratio;   // upper(mu)/(8 h(r)) or h(r)/(2 M lower(mu))
  bool pass = false;
};

/// mu(I) <= 8 h(r) for the open interval I = (lo, hi) of length 2r.
FrostmanSample check_frostman_upper(const LevelSet& depth_level, const DimensionFunction& dim, const Ball& lo,
                                    const Ball& hi);
/// h(r) <= 2M mu((x - r, x + r)) for a point x of K (an endpoint of a basic interval).
FrostmanSample check_frostman_lower(const LevelSet& depth_level, const DimensionFunction& dim, const Ball& M,
                                    const Ball& x, const Real& r);

CheckReport verify_frostman_upper(const LevelSet& depth_level, const DimensionFunction& dim,
                                  const std::vector<std::pair<Ball, Ball>>& intervals);
CheckReport verify_frostman_lower(const LevelSet& depth_level, const DimensionFunction& dim, const Ball& M,
                                  const std::vector<std::pair<Ball, Real>>& points);

struct CanonicalCover {
  Ball length_sum;  // sum_j h(l_{j,s})
  Ball radius_sum;  // sum_j h(l_{j,s}/2 + delta_s/100)
  bool within_bounds = false;  // 1 < length_sum < M (length_sum = 1 at s = 0)
};

/// Sums of h over the canonical cover by the level-s intervals, optionally only
/// over the descendants of `restrict_to` (an interval of a coarser level).
CanonicalCover canonical_cover_sum(const LevelSet& level, const DimensionFunction& dim, const Ball& M,
                                   const BasicInterval* restrict_to = nullptr);

struct CoverRecord {
  Ball d;            // length of J_nu
  long q = 0;        // coarsest level with a basic interval inside J'_nu
  std::uint64_t N = 0;  // level-n intervals inside J'_nu
  Ball h;            // h(d)
};

struct CoverReport {
  long n = 0;  // alignment level
  long depth = 0;
  std::vector<CoverRecord> records;
  Ball sum_h;
  Ball sum_pow;  // sum 2^-q
  std::uint64_t total_N = 0;
  bool pass = false;
  std::vector<std::string> failures;
};

/// Audits the lower-bound argument for a cover by disjoint open intervals whose
/// endpoints lie in gaps of the depth level: h(d) >= 2^-q, N <= 2^{n-q+2},
/// sum N = 2^n and sum h(d) >= 1/4. Throws not-a-cover when some level-depth
/// interval is left uncovered and config when an endpoint is not in a gap.
CoverReport audit_cover(const LevelSet& depth_level, const DimensionFunction& dim,
                        const std::vector<std::pair<Ball, Ball>>& cover);

struct HausdorffBracket {
  Real lower;       // 1/8, or 2^{-s-3} when restricted to an s-level interval
  Ball upper;       // min over levels of the radius-convention cover sums
  long best_level = 0;
  Ball bound;       // M/2, or M 2^{-s-1}
  std::vector<Ball> level_sums;
  bool consistent = false;  // lower <= upper <= bound
};

/// Bracket for Lambda_h(K) (or Lambda_h(K cap restrict_to)) from the levels up to s_max.
HausdorffBracket hausdorff_bounds(const std::vector<LevelSet>& levels, const DimensionFunction& dim, const Ball& M,
                                  long s_max, const BasicInterval* restrict_to = nullptr);

/// Full-set bracket plus every restriction to intervals of level <= restrict_max.
CheckReport verify_hausdorff(const std::vector<LevelSet>& levels, const DimensionFunction& dim, const Ball& M,
                             long restrict_max);

CheckReport verify_covers(const LevelSet& depth_level, const DimensionFunction& dim,
                          const std::vector<std::vector<std::pair<Ball, Ball>>>& covers);

// Sampling. All draws go through `Rng` so a seed fixes every sample.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits.
double uniform01(Rng& rng);
/// Point strictly inside gap g of the level (g = 0 is left of 0, g = 2^s right of 1).
Real gap_point(const LevelSet& level, std::size_t gap, Rng& rng);
/// Open intervals with both ends in gaps of the level.
std::vector<std::pair<Ball, Ball>> sample_gap_intervals(const LevelSet& level, std::size_t count, Rng& rng);
/// (x, r) with x a basic-interval endpoint of `point_level` (level S) and r
/// log-uniform in [delta_S, 1). Counting at depth >= S + 1 then resolves the
/// basic interval of length <= r that contains x.
std::vector<std::pair<Ball, Real>> sample_kernel_points(const LevelSet& point_level, const DimensionFunction& dim,
                                                        std::size_t count, Rng& rng);
/// Disjoint open intervals with endpoints in gaps covering every level interval.
std::vector<std::pair<Ball, Ball>> random_gap_cover(const LevelSet& level, Rng& rng);
/// (r, m) with r log-uniform in [delta_levels, 1) and m log-uniform in (1, 10^3).
std::vector<std::pair<Real, Real>> sample_doubling(const DimensionFunction& dim, std::size_t count, Rng& rng);

}  // namespace cantor
