#include "cantor/orthopoly.hpp"

#include <cmath>
#include <numbers>

#include "cantor/error.hpp"

namespace cantor {

namespace {

/// P_n(x) and P_{n-1}(x) by the Legendre recurrence.
std::pair<Real, Real> legendre(std::size_t n, const Real& x, Bits bits) {
  Real prev(1, bits);
  Real cur = x.rounded(bits);
  if (n == 0) return {prev, Real(0, bits)};
  for (std::size_t k = 1; k < n; ++k) {
    // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
    Real next = (Real(static_cast<long>(2 * k + 1), bits) * x * cur - Real(static_cast<long>(k), bits) * prev) /
                Real(static_cast<long>(k + 1), bits);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {cur, prev};
}

std::string measure_name(const PiecewiseUniformMeasure& measure) { return "lambda_" + std::to_string(measure.s); }

}  // namespace

QuadratureRule gauss_legendre(std::size_t n, Bits bits) {
  if (n == 0) throw Error(ErrorCode::Config, "quadrature needs at least one node");
  const Bits work = bits + 32;
  const Real threshold = Real::pow2(-static_cast<long>(work) + 8, 64);
  QuadratureRule rule;
  rule.nodes.assign(n, Real(bits));
  rule.weights.assign(n, Real(bits));
  const Real one(1, work);
  for (std::size_t i = 1; i <= (n + 1) / 2; ++i) {
    Real x = Real::from_double(std::cos(std::numbers::pi * (static_cast<double>(i) - 0.25) /
                                        (static_cast<double>(n) + 0.5)),
                               work);
    Real dp(work);
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      const auto [p, q] = legendre(n, x, work);
      dp = Real(static_cast<long>(n), work) * (x * p - q) / (x * x - one);
      const Real dx = p / dp;
      x -= dx;
      if (converged) break;
      if (dx.is_zero() || abs(dx) < threshold) converged = true;  // one more step after convergence
    }
    if (!converged) throw Error(ErrorCode::PrecisionExhausted, "Gauss-Legendre Newton iteration did not converge");
    if (2 * i - 1 == n) x = Real(0, work);  // middle node of an odd rule
    {
      const auto [p, q] = legendre(n, x, work);
      dp = Real(static_cast<long>(n), work) * (x * p - q) / (x * x - one);
    }
    const Real w = Real(2, work) / ((one - x * x) * dp * dp);
    // Map x in [-1, 1] to t = (1 + x)/2; the rule is mirrored so that it is exactly symmetric about 1/2.
    const Real t = ldexp(one + x, -1);
    const Real half_w = ldexp(w, -1);
    rule.nodes[n - i] = t.rounded(bits);
    rule.weights[n - i] = half_w.rounded(bits);
    rule.nodes[i - 1] = (one - t).rounded(bits);
    rule.weights[i - 1] = half_w.rounded(bits);
  }
  return rule;
}

DiscreteMeasure discretize(const PiecewiseUniformMeasure& measure, std::size_t n, Bits bits) {
  const QuadratureRule rule = gauss_legendre(n, bits);
  DiscreteMeasure out;
  out.nodes.reserve(n * measure.intervals.size());
  out.weights.reserve(n * measure.intervals.size());
  for (const BasicInterval& I : measure.intervals) {
    const Real a = I.a.mid().rounded(bits);
    const Real l = sub(I.b.mid(), I.a.mid(), bits, MPFR_RNDN);
    for (std::size_t i = 0; i < n; ++i) {
      out.nodes.push_back(add(a, mul(l, rule.nodes[i], bits, MPFR_RNDN), bits, MPFR_RNDN));
      out.weights.push_back(ldexp(rule.weights[i], -measure.s));
    }
  }
  return out;
}

MomentTable moments(const PiecewiseUniformMeasure& measure, std::size_t K, Bits bits) {
  MomentTable table;
  table.measure = measure_name(measure);
  table.m.assign(K + 1, Ball(0, bits));
  for (const BasicInterval& I : measure.intervals) {
    const Ball a = I.a.rounded(bits);
    const Ball b = I.b.rounded(bits);
    Ball b_pow(1, bits);  // b^k
    Ball S(1, bits);      // sum_{i<=k} b^i a^{k-i}
    table.m[0] += S;
    for (std::size_t k = 1; k <= K; ++k) {
      b_pow = b_pow * b;
      S = b_pow + a * S;
      table.m[k] += S / Ball(static_cast<long>(k + 1), bits);
    }
  }
  for (Ball& m : table.m) m = ldexp(m, -measure.s);
  return table;
}

Real RecurrenceCoefficients::log_a(std::size_t n) const {
  if (n == 0 || n >= beta.size()) throw Error(ErrorCode::Config, "log a_n needs 1 <= n <= N");
  Real sum(0, bits);
  for (std::size_t k = 1; k <= n; ++k) sum += log(beta[k]);
  return ldexp(-sum, -1);
}

Real RecurrenceCoefficients::root(std::size_t n) const {
  return exp(-log_a(n) / Real(static_cast<long>(n), bits));
}

RecurrenceCoefficients recurrence(const PiecewiseUniformMeasure& measure, std::size_t N,
                                  const PrecisionContext& ctx) {
  PrecisionContext current = ctx;
  for (;;) {
    const Bits bits = current.bits();
    const DiscreteMeasure dm = discretize(measure, N + 1, bits);
    const std::size_t count = dm.nodes.size();
    RecurrenceCoefficients rc;
    rc.measure = measure_name(measure);
    rc.bits = bits;
    std::vector<Real> prev(count, Real(0, bits)), cur(count, Real(1, bits)), next(count, Real(bits));
    Real norm_prev(1, bits);
    bool breakdown = false;
    for (std::size_t k = 0; k <= N; ++k) {
      Real norm(0, bits), moment(0, bits);
      for (std::size_t i = 0; i < count; ++i) {
        const Real wp2 = dm.weights[i] * cur[i] * cur[i];
        norm += wp2;
        if (k < N) moment += wp2 * dm.nodes[i];
      }
      if (!(norm.sign() > 0) || !norm.is_finite()) {
        breakdown = true;
        break;
      }
      rc.beta.push_back(k == 0 ? norm : norm / norm_prev);
      if (k == N) break;
      rc.alpha.push_back(moment / norm);
      const Real& alpha = rc.alpha.back();
      const Real& beta = rc.beta.back();
      for (std::size_t i = 0; i < count; ++i) {
        next[i] = (dm.nodes[i] - alpha) * cur[i];
        if (k > 0) next[i] -= beta * prev[i];
      }
      std::swap(prev, cur);
      std::swap(cur, next);
      norm_prev = std::move(norm);
    }
    if (!breakdown) return rc;
    if (!current.can_escalate()) {
      throw Error(ErrorCode::Breakdown, "non-positive beta in the recurrence for " + rc.measure + " at " +
                                            std::to_string(bits) + " bits");
    }
    current = current.escalated();
  }
}

std::vector<Real> moments_from_recurrence(const RecurrenceCoefficients& rc, std::size_t K) {
  const std::size_t N = rc.size();
  if (N == 0 || K > 2 * N - 1) throw Error(ErrorCode::Config, "moments from the recurrence need K <= 2N - 1");
  const Bits bits = rc.bits;
  std::vector<Real> off(N, Real(0, bits));  // off[i] = sqrt(beta_{i+1})
  for (std::size_t i = 0; i + 1 < N; ++i) off[i] = sqrt(rc.beta[i + 1]);
  std::vector<std::vector<Real>> powers;  // J^j e_0
  std::vector<Real> v(N, Real(0, bits));
  v[0] = Real(1, bits);
  powers.push_back(v);
  for (std::size_t j = 1; j <= (K + 1) / 2; ++j) {
    std::vector<Real> w(N, Real(0, bits));
    for (std::size_t i = 0; i < N; ++i) {
      w[i] = rc.alpha[i] * v[i];
      if (i > 0) w[i] += off[i - 1] * v[i - 1];
      if (i + 1 < N) w[i] += off[i] * v[i + 1];
    }
    v = std::move(w);
    powers.push_back(v);
  }
  std::vector<Real> m;
  for (std::size_t k = 0; k <= K; ++k) {
    const auto& x = powers[k / 2];
    const auto& y = powers[(k + 1) / 2];
    Real dot(0, bits);
    for (std::size_t i = 0; i < N; ++i) dot += x[i] * y[i];
    m.push_back(rc.beta[0] * dot);
  }
  return m;
}

RegularityDiagnostic regularity_diagnostic(const RecurrenceCoefficients& rc) {
  const std::size_t N = rc.size();
  if (N < 2) throw Error(ErrorCode::Config, "regularity diagnostic needs N >= 2");
  const Bits bits = rc.bits;
  RegularityDiagnostic out;
  for (std::size_t n = 1; n <= N; ++n) out.values.emplace_back(n, rc.root(n));

  const std::size_t first = N - std::max<std::size_t>(N / 4, 2) + 1;
  const auto count = static_cast<long>(N - first + 1);
  Real sum_n(0, bits), sum_v(0, bits), sum_nn(0, bits), sum_nv(0, bits);
  for (std::size_t n = first; n <= N; ++n) {
    const Real x(static_cast<long>(n), bits);
    const Real& v = out.values[n - 1].second;
    sum_n += x;
    sum_v += v;
    sum_nn += x * x;
    sum_nv += x * v;
  }
  const Real c(count, bits);
  out.last_quartile_mean = sum_v / c;
  out.last_quartile_slope = (c * sum_nv - sum_n * sum_v) / (c * sum_nn - sum_n * sum_n);

  const std::size_t window = std::min<std::size_t>(16, N - 1);
  const Real& last = out.values[N - 1].second;
  out.window_change = abs(last - out.values[N - 1 - window].second) / last;
  out.max_step_change = Real(0, bits);
  for (std::size_t n = N - window; n < N; ++n) {
    const Real& v0 = out.values[n - 1].second;
    const Real& v1 = out.values[n].second;
    out.max_step_change = max(out.max_step_change, abs(v1 - v0) / v1);
  }
  return out;
}

std::vector<ExponentSample> exponent_estimate(const LevelSet& depth_level, const std::vector<Ball>& points,
                                              const std::vector<Real>& radii, const Real& bound) {
  std::vector<ExponentSample> out;
  out.reserve(points.size() * radii.size());
  for (const Ball& x : points) {
    for (const Real& r : radii) {
      if (!(r.sign() > 0) || !(r < 1)) throw Error(ErrorCode::Config, "exponent radii must lie in (0, 1)");
      ExponentSample sample{x, r, ball_measure(depth_level, x, r), std::nullopt, false, false};
      if (sample.mu.lower_count == 0) {
        sample.indeterminate = true;
      } else {
        const Bits bits = std::max<Bits>(r.bits(), 128);
        const Real num = -log(sample.mu.lower().rounded(bits + 64));
        const Real den = -log(r.rounded(bits));
        sample.ratio = num / den;
        sample.exceeds = *sample.ratio > bound;
      }
      out.push_back(std::move(sample));
    }
  }
  return out;
}

CheckReport verify_exponent(const LevelSet& depth_level, const std::vector<Ball>& points,
                            const std::vector<Real>& radii, const Real& bound) {
  CheckReport report;
  report.check = "exponent";
  report.parameters = {{"depth", std::to_string(depth_level.s)},
                       {"points", std::to_string(points.size())},
                       {"radii", std::to_string(radii.size())},
                       {"bound", bound.to_string(6)}};
  const auto samples = exponent_estimate(depth_level, points, radii, bound);
  std::size_t indeterminate = 0, exceeding = 0;
  const ExponentSample* worst = nullptr;
  for (const ExponentSample& s : samples) {
    ++report.samples;
    if (s.indeterminate) {
      ++indeterminate;
      continue;
    }
    if (worst == nullptr || *s.ratio > *worst->ratio) worst = &s;
    if (s.exceeds) {
      ++exceeding;
      report.fail("x=" + s.x.mid().to_string(20) + " r=" + s.r.to_string(12) + " mu>=" + s.mu.lower().to_string(12) +
                  " ratio=" + s.ratio->to_string(12));
    }
  }
  report.worst_ratio = worst ? worst->ratio->to_string(12) : "0";
  report.summary.push_back({"indeterminate", std::to_string(indeterminate)});
  report.summary.push_back({"exceeding", std::to_string(exceeding)});
  if (worst) {
    report.summary.push_back({"worst_x", worst->x.mid().to_string(20)});
    report.summary.push_back({"worst_r", worst->r.to_string(12)});
  }
  return report;
}

std::vector<Ball> level_endpoints(const LevelSet& level) {
  std::vector<Ball> out;
  out.reserve(2 * level.size());
  for (const BasicInterval& I : level.intervals) {
    out.push_back(I.a);
    out.push_back(I.b);
  }
  return out;
}

}  // namespace cantor
