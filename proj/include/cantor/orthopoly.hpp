#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor/measures.hpp"
#include "cantor/precision.hpp"

namespace cantor {

/// n-point Gauss-Legendre rule on [0, 1] (weights sum to 1), exact for degree <= 2n - 1.
struct QuadratureRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

/// Nodes by Newton iteration on the Legendre three-term recurrence at `bits`.
QuadratureRule gauss_legendre(std::size_t n, Bits bits);

/// Discrete measure whose moments up to degree 2n - 1 equal those of lambda_s.
struct DiscreteMeasure {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

/// n nodes per basic interval, affinely mapped from the reference rule, each
/// interval's weights scaled to 2^-s.
DiscreteMeasure discretize(const PiecewiseUniformMeasure& measure, std::size_t n, Bits bits);

struct MomentTable {
  std::string measure;
  std::vector<Ball> m;  // m_0..m_K
};

/// m_k = 2^-s/(k+1) sum_j (b^{k+1} - a^{k+1})/(b - a), with the quotient
/// expanded as sum_i b^i a^{k-i} so that no cancellation occurs.
MomentTable moments(const PiecewiseUniformMeasure& measure, std::size_t K, Bits bits);

/// x p_k = p_{k+1} + alpha_k p_k + beta_k p_{k-1} for the monic orthogonal
/// polynomials, beta_0 = m_0. The orthonormal leading coefficients are
/// a_n = (beta_1 ... beta_n)^{-1/2}.
struct RecurrenceCoefficients {
  std::string measure;
  Bits bits = 0;
  std::vector<Real> alpha;  // alpha_0..alpha_{N-1}
  std::vector<Real> beta;   // beta_0..beta_{N}

  std::size_t size() const noexcept { return alpha.size(); }
  /// log a_n for 1 <= n <= N.
  Real log_a(std::size_t n) const;
  /// a_n^{-1/n} = (beta_1 ... beta_n)^{1/(2n)}.
  Real root(std::size_t n) const;
};

/// Discretized Stieltjes procedure with N + 1 Gauss-Legendre nodes per basic
/// interval. Escalates precision when some beta_k is not positive, then throws breakdown.
RecurrenceCoefficients recurrence(const PiecewiseUniformMeasure& measure, std::size_t N,
                                  const PrecisionContext& ctx);

/// m_k = beta_0 (J^k)_{00} for the truncated Jacobi matrix; exact for k <= 2N - 1.
std::vector<Real> moments_from_recurrence(const RecurrenceCoefficients& rc, std::size_t K);

struct RegularityDiagnostic {
  std::vector<std::pair<std::size_t, Real>> values;  // (n, a_n^{-1/n})
  Real last_quartile_mean;
  Real last_quartile_slope;  // least-squares slope in n over the last quarter
  Real window_change;        // |v_N - v_{N-16}| / v_N
  Real max_step_change;      // max |v_{n+1} - v_n| / v_{n+1} over the last 16 steps
};

RegularityDiagnostic regularity_diagnostic(const RecurrenceCoefficients& rc);

struct ExponentSample {
  Ball x;
  Real r;
  MeasureBounds mu;               // closed ball [x - r, x + r]
  std::optional<Real> ratio;      // log(1/lower mu) / log(1/r); empty when indeterminate
  bool indeterminate = false;     // lower mu = 0 at the available depth
  bool exceeds = false;           // ratio > bound
};

/// Ratios for every (point, radius) pair; the certified lower bound of mu
/// replaces mu, which can only overstate the ratio.
std::vector<ExponentSample> exponent_estimate(const LevelSet& depth_level, const std::vector<Ball>& points,
                                              const std::vector<Real>& radii, const Real& bound);

CheckReport verify_exponent(const LevelSet& depth_level, const std::vector<Ball>& points,
                            const std::vector<Real>& radii, const Real& bound);

/// Every distinct endpoint of the level's basic intervals, in increasing order.
std::vector<Ball> level_endpoints(const LevelSet& level);

}  // namespace cantor
