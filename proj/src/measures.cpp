#include "cantor/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "cantor/error.hpp"

namespace cantor {

namespace {

/// x <= y is certain, or x and y are the same endpoint.
bool certainly_le(const Ball& x, const Ball& y) { return x.identical(y) || x.upper() <= y.lower(); }

Real dyadic(std::uint64_t count, long depth) {
  Real value(static_cast<long>(count), 64 + depth);
  return ldexp(value, -depth);
}

struct IndexRanges {
  std::size_t inside_begin, inside_end;    // certainly inside
  std::size_t touch_begin, touch_end;      // possibly meeting in more than a point
};

IndexRanges locate(const std::vector<BasicInterval>& iv, const Ball& lo, const Ball& hi) {
  const auto index = [&](auto pred) {
    std::size_t a = 0, b = iv.size();
    while (a < b) {
      const std::size_t m = a + (b - a) / 2;
      if (pred(iv[m])) a = m + 1;
      else b = m;
    }
    return a;
  };
  IndexRanges r{};
  r.inside_begin = index([&](const BasicInterval& I) { return !certainly_le(lo, I.a); });
  r.inside_end = index([&](const BasicInterval& I) { return certainly_le(I.b, hi); });
  r.touch_begin = index([&](const BasicInterval& I) { return certainly_le(I.b, lo); });
  r.touch_end = index([&](const BasicInterval& I) { return !certainly_le(hi, I.a); });
  return r;
}

std::uint64_t span(std::size_t begin, std::size_t end) { return end > begin ? end - begin : 0; }

std::string str(const Ball& x, int digits = 12) { return x.mid().to_string(digits); }

Real uniform_real(Rng& rng) { return Real::from_double(uniform01(rng), 53); }

/// lo + (hi - lo) * (margin + (1 - 2 margin) u), strictly inside (lo, hi).
Real interior_point(const Real& lo, const Real& hi, double u, Bits bits) {
  const double t = 0.01 + 0.98 * u;
  Real width = sub(hi, lo, bits, MPFR_RNDN);
  return add(lo, mul(width, Real::from_double(t, 53), bits, MPFR_RNDN), bits, MPFR_RNDN);
}

std::pair<std::size_t, std::size_t> descendant_range(const LevelSet& level, const BasicInterval* restrict_to) {
  if (restrict_to == nullptr) return {0, level.size()};
  if (restrict_to->s > level.s) throw Error(ErrorCode::Config, "restriction is finer than the level");
  const std::size_t width = std::size_t{1} << (level.s - restrict_to->s);
  return {(restrict_to->j - 1) * width, restrict_to->j * width};
}

}  // namespace

Real PiecewiseUniformMeasure::mass() const { return Real::pow2(-s, 64); }

Ball PiecewiseUniformMeasure::density(std::size_t k) const {
  return Ball(Real(1, 64)) / ldexp(intervals.at(k).length(), s);
}

Real PiecewiseUniformMeasure::total_mass() const {
  Real total(0, 64 + s);
  for (std::size_t k = 0; k < intervals.size(); ++k) total += mass();
  return total;
}

Ball PiecewiseUniformMeasure::integrate(const Ball& lo, const Ball& hi) const {
  const IndexRanges r = locate(intervals, lo, hi);
  Ball total(Real(static_cast<long>(span(r.inside_begin, r.inside_end)), 64));
  total = ldexp(total, -s);
  // Partially covered intervals contribute density * overlap length.
  const auto clamp_max = [](const Ball& x, const Ball& y) {
    if (certainly_le(x, y)) return y;
    if (certainly_le(y, x)) return x;
    return Ball::hull(max(x.lower(), y.lower()), max(x.upper(), y.upper()));
  };
  const auto clamp_min = [](const Ball& x, const Ball& y) {
    if (certainly_le(x, y)) return x;
    if (certainly_le(y, x)) return y;
    return Ball::hull(min(x.lower(), y.lower()), min(x.upper(), y.upper()));
  };
  for (std::size_t k = r.touch_begin; k < r.touch_end; ++k) {
    if (k >= r.inside_begin && k < r.inside_end) continue;
    const BasicInterval& I = intervals[k];
    Ball overlap = clamp_min(hi, I.b) - clamp_max(lo, I.a);
    if (overlap.upper().sign() <= 0) continue;
    if (overlap.lower().sign() < 0) overlap = Ball::hull(Real(0, 64), overlap.upper());
    total += overlap * density(k);
  }
  return total;
}

PiecewiseUniformMeasure lambda_measure(const LevelSet& level) { return {level.s, level.intervals}; }

Real MeasureBounds::lower() const { return dyadic(lower_count, depth); }
Real MeasureBounds::upper() const { return dyadic(upper_count, depth); }

MeasureBounds mu_interval(const LevelSet& depth_level, const Ball& lo, const Ball& hi) {
  MeasureBounds out;
  out.depth = depth_level.s;
  if (certainly_le(hi, lo)) return out;
  const IndexRanges r = locate(depth_level.intervals, lo, hi);
  out.lower_count = span(r.inside_begin, r.inside_end);
  out.upper_count = span(r.touch_begin, r.touch_end);
  return out;
}

MeasureBounds ball_measure(const LevelSet& depth_level, const Ball& x, const Real& r) {
  if (r.sign() <= 0) throw Error(ErrorCode::Config, "ball radius must be positive");
  const Ball radius(r);
  return mu_interval(depth_level, x - radius, x + radius);
}

FrostmanSample check_frostman_upper(const LevelSet& depth_level, const DimensionFunction& dim, const Ball& lo,
                                    const Ball& hi) {
  if (!certainly_less(lo, hi)) throw Error(ErrorCode::Config, "interval endpoints must be ordered");
  FrostmanSample out;
  out.mu = mu_interval(depth_level, lo, hi);
  out.h = dim.h(ldexp(hi - lo, -1));
  const Ball bound = ldexp(out.h, 3);
  const Real mu = out.mu.upper();
  out.ratio = Ball(mu) / bound;
  out.pass = mu <= bound.lower();
  return out;
}

FrostmanSample check_frostman_lower(const LevelSet& depth_level, const DimensionFunction& dim, const Ball& M,
                                    const Ball& x, const Real& r) {
  FrostmanSample out;
  out.mu = ball_measure(depth_level, x, r);
  out.h = dim.h(r);
  if (out.mu.lower_count == 0) {
    out.pass = false;
    return out;
  }
  const Ball bound = ldexp(M, 1) * Ball(out.mu.lower());
  out.ratio = out.h / bound;
  out.pass = out.h.upper() <= bound.lower();
  return out;
}

CheckReport verify_frostman_upper(const LevelSet& depth_level, const DimensionFunction& dim,
                                  const std::vector<std::pair<Ball, Ball>>& intervals) {
  CheckReport report;
  report.check = "frostman-upper";
  report.parameters = {{"depth", std::to_string(depth_level.s)}, {"constant", "8"}};
  std::optional<Ball> worst;
  for (const auto& [lo, hi] : intervals) {
    const FrostmanSample sample = check_frostman_upper(depth_level, dim, lo, hi);
    ++report.samples;
    if (!worst || sample.ratio.mid() > worst->mid()) worst = sample.ratio;
    if (!sample.pass) {
      report.fail("lo=" + str(lo, 20) + " hi=" + str(hi, 20) + " mu<=" + sample.mu.upper().to_string(12) +
                  " h=" + str(sample.h));
    }
  }
  report.worst_ratio = worst ? str(*worst) : "0";
  return report;
}

CheckReport verify_frostman_lower(const LevelSet& depth_level, const DimensionFunction& dim, const Ball& M,
                                  const std::vector<std::pair<Ball, Real>>& points) {
  CheckReport report;
  report.check = "frostman-lower";
  report.parameters = {{"depth", std::to_string(depth_level.s)}, {"M", str(M)}};
  std::optional<Ball> worst;
  for (const auto& [x, r] : points) {
    const FrostmanSample sample = check_frostman_lower(depth_level, dim, M, x, r);
    ++report.samples;
    if (sample.mu.lower_count > 0 && (!worst || sample.ratio.mid() > worst->mid())) worst = sample.ratio;
    if (!sample.pass) {
      report.fail("x=" + str(x, 20) + " r=" + r.to_string(20) + " mu>=" + sample.mu.lower().to_string(12) +
                  " h=" + str(sample.h));
    }
  }
  report.worst_ratio = worst ? str(*worst) : "0";
  return report;
}

CanonicalCover canonical_cover_sum(const LevelSet& level, const DimensionFunction& dim, const Ball& M,
                                   const BasicInterval* restrict_to) {
  const auto [begin, end] = descendant_range(level, restrict_to);
  const long t = restrict_to ? restrict_to->s : 0;
  const Bits bits = dim.bits();
  const Ball eps = level.delta / Ball(100, bits);
  CanonicalCover out{Ball(0, bits), Ball(0, bits), false};
  for (std::size_t k = begin; k < end; ++k) {
    const Ball l = level.intervals[k].length();
    out.length_sum += dim.h(l);
    out.radius_sum += dim.h(ldexp(l, -1) + eps);
  }
  const Real floor = Real::pow2(-t, 64);
  const Ball ceiling = ldexp(M, -t);
  if (level.s == t) {
    out.within_bounds = out.length_sum.lower() >= floor && certainly_less(out.length_sum, ceiling);
  } else {
    out.within_bounds = out.length_sum.lower() > floor && certainly_less(out.length_sum, ceiling);
  }
  return out;
}

CoverReport audit_cover(const LevelSet& depth_level, const DimensionFunction& dim,
                        const std::vector<std::pair<Ball, Ball>>& cover) {
  const long depth = depth_level.s;
  if (depth > 62) throw Error(ErrorCode::DepthExceeded, "cover audit supports depth <= 62");
  const std::size_t count = depth_level.size();
  CoverReport out;
  out.depth = depth;

  struct Piece {
    std::size_t first, last;  // inclusive level-depth indices inside J'
    Ball d;
  };
  std::vector<Piece> pieces;
  for (const auto& [x, y] : cover) {
    if (!certainly_less(x, y)) throw Error(ErrorCode::Config, "cover interval endpoints must be ordered");
    const IndexRanges r = locate(depth_level.intervals, x, y);
    if (r.inside_begin != r.touch_begin || r.inside_end != r.touch_end) {
      throw Error(ErrorCode::Config, "cover endpoint " + str(x, 20) + " or " + str(y, 20) + " is not in a gap");
    }
    if (r.inside_end <= r.inside_begin) continue;  // J' is empty
    pieces.push_back({r.inside_begin, r.inside_end - 1, y - x});
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.first < b.first; });
  std::size_t next = 0;
  for (const Piece& p : pieces) {
    if (p.first < next) throw Error(ErrorCode::Config, "cover intervals overlap");
    if (p.first > next) {
      throw Error(ErrorCode::NotACover, "level-" + std::to_string(depth) + " interval j=" + std::to_string(next + 1) +
                                            " is not covered");
    }
    next = p.last + 1;
  }
  if (next != count) {
    throw Error(ErrorCode::NotACover,
                "level-" + std::to_string(depth) + " interval j=" + std::to_string(next + 1) + " is not covered");
  }

  // Alignment level: every endpoint of every J' is an endpoint of E_n.
  long n = 0;
  for (const Piece& p : pieces) {
    const long left = p.first == 0 ? 0 : depth - std::countr_zero(static_cast<std::uint64_t>(p.first));
    const long right = p.last + 1 == count ? 0 : depth - std::countr_one(static_cast<std::uint64_t>(p.last));
    n = std::max({n, left, right});
  }
  out.n = n;

  const Bits bits = dim.bits();
  out.sum_h = Ball(0, bits);
  std::uint64_t sum_pow_scaled = 0;  // sum 2^{n-q}
  for (const Piece& p : pieces) {
    CoverRecord rec;
    rec.d = p.d;
    rec.N = (p.last - p.first + 1) >> (depth - n);
    rec.q = n;
    for (long q = 0; q <= n; ++q) {
      const std::uint64_t block = std::uint64_t{1} << (depth - q);
      const std::uint64_t k = (p.first + block - 1) / block;
      if ((k + 1) * block - 1 <= p.last) {
        rec.q = q;
        break;
      }
    }
    rec.h = dim.h(rec.d);
    out.sum_h += rec.h;
    out.total_N += rec.N;
    sum_pow_scaled += std::uint64_t{1} << (n - rec.q);

    const std::string where = "J=(" + str(p.d, 6) + " long, q=" + std::to_string(rec.q) + ", N=" +
                              std::to_string(rec.N) + ")";
    if (!(rec.h.lower() >= Real::pow2(-rec.q, 64))) out.failures.push_back("h(d) < 2^-q at " + where);
    if (rec.N > (std::uint64_t{1} << std::min<long>(n - rec.q + 2, 63))) {
      out.failures.push_back("N > 2^{n-q+2} at " + where);
    }
    out.records.push_back(std::move(rec));
  }
  out.sum_pow = ldexp(Ball(Real(static_cast<long>(sum_pow_scaled), 64)), -n);
  if (out.total_N != (std::uint64_t{1} << n)) out.failures.push_back("sum N != 2^n");
  if (4 * sum_pow_scaled < out.total_N) out.failures.push_back("sum 2^-q < 2^{-n-2} sum N");
  if (!(out.sum_h.lower() >= Real::parse("0.25", 64))) out.failures.push_back("sum h(d) < 1/4");
  out.pass = out.failures.empty();
  return out;
}

HausdorffBracket hausdorff_bounds(const std::vector<LevelSet>& levels, const DimensionFunction& dim, const Ball& M,
                                  long s_max, const BasicInterval* restrict_to) {
  if (s_max < 0 || s_max >= static_cast<long>(levels.size())) {
    throw Error(ErrorCode::DepthExceeded, "hausdorff bounds need levels up to s_max");
  }
  const long t = restrict_to ? restrict_to->s : 0;
  if (t > s_max) throw Error(ErrorCode::Config, "restriction is finer than s_max");
  HausdorffBracket out;
  out.lower = Real::pow2(-t - 3, 64);
  out.bound = ldexp(M, -t - 1);
  for (long s = t; s <= s_max; ++s) {
    const CanonicalCover c = canonical_cover_sum(levels[s], dim, M, restrict_to);
    if (out.level_sums.empty() || c.radius_sum.upper() < out.upper.upper()) {
      out.upper = c.radius_sum;
      out.best_level = s;
    }
    out.level_sums.push_back(c.radius_sum);
  }
  out.consistent = out.lower <= out.upper.lower() && certainly_less_equal(out.upper, out.bound);
  return out;
}

CheckReport verify_hausdorff(const std::vector<LevelSet>& levels, const DimensionFunction& dim, const Ball& M,
                             long restrict_max) {
  const long s_max = static_cast<long>(levels.size()) - 1;
  CheckReport report;
  report.check = "hausdorff";
  report.parameters = {{"s_max", std::to_string(s_max)},
                       {"restrict_max", std::to_string(restrict_max)},
                       {"radius_convention", "h(l/2 + delta_s/100)"}};
  Real worst(0, 64);
  const auto record = [&](const HausdorffBracket& b, const std::string& label) {
    ++report.samples;
    const Ball ratio = b.upper / b.bound;
    if (ratio.mid() > worst) worst = ratio.mid().rounded(64);
    if (!b.consistent) {
      report.fail(label + " lower=" + b.lower.to_string(6) + " upper=" + str(b.upper) + " bound=" + str(b.bound));
    }
  };
  const HausdorffBracket full = hausdorff_bounds(levels, dim, M, s_max);
  record(full, "full");
  report.summary.push_back({"lower", full.lower.to_string(6)});
  report.summary.push_back({"upper", str(full.upper)});
  report.summary.push_back({"best_level", std::to_string(full.best_level)});
  report.summary.push_back({"M_over_2", str(full.bound)});
  for (long t = 1; t <= std::min(restrict_max, s_max); ++t) {
    for (const BasicInterval& I : levels[t].intervals) {
      record(hausdorff_bounds(levels, dim, M, s_max, &I),
             "I_{" + std::to_string(I.j) + "," + std::to_string(t) + "}");
    }
  }
  report.worst_ratio = worst.to_string(12);
  return report;
}

CheckReport verify_covers(const LevelSet& depth_level, const DimensionFunction& dim,
                          const std::vector<std::vector<std::pair<Ball, Ball>>>& covers) {
  CheckReport report;
  report.check = "covers";
  report.parameters = {{"depth", std::to_string(depth_level.s)}, {"floor", "0.25"}};
  std::optional<Ball> min_sum;
  for (std::size_t c = 0; c < covers.size(); ++c) {
    const CoverReport audit = audit_cover(depth_level, dim, covers[c]);
    ++report.samples;
    if (!min_sum || audit.sum_h.mid() < min_sum->mid()) min_sum = audit.sum_h;
    if (!audit.pass) report.fail("cover " + std::to_string(c) + ": " + audit.failures.front());
  }
  // Worst case: the floor 1/4 relative to the smallest sum.
  report.worst_ratio = min_sum ? str(Ball(Real::parse("0.25", 64)) / *min_sum) : "0";
  if (min_sum) report.summary.push_back({"min_sum_h", str(*min_sum)});
  return report;
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Real gap_point(const LevelSet& level, std::size_t gap, Rng& rng) {
  const auto& iv = level.intervals;
  if (gap > iv.size()) throw Error(ErrorCode::Config, "gap index out of range");
  const Bits bits = std::max<Bits>(level.precision_bits, 64);
  const Real lo = gap == 0 ? Real::parse("-0.25", 64) : iv[gap - 1].b.upper();
  const Real hi = gap == iv.size() ? Real::parse("1.25", 64) : iv[gap].a.lower();
  return interior_point(lo, hi, uniform01(rng), bits);
}

std::vector<std::pair<Ball, Ball>> sample_gap_intervals(const LevelSet& level, std::size_t count, Rng& rng) {
  std::vector<std::pair<Ball, Ball>> out;
  out.reserve(count);
  const auto gaps = static_cast<long>(level.size()) + 1;
  const double spread = std::log2(static_cast<double>(gaps));
  while (out.size() < count) {
    const long g1 = static_cast<long>(uniform01(rng) * gaps);
    // Offsets are log-uniform so that short and long intervals are both common.
    const long offset = static_cast<long>(std::exp2(uniform01(rng) * spread)) - 1;
    const long g2 = std::clamp(uniform01(rng) < 0.5 ? g1 - offset : g1 + offset, 0L, gaps - 1);
    Real x = gap_point(level, static_cast<std::size_t>(g1), rng);
    Real y = gap_point(level, static_cast<std::size_t>(g2), rng);
    if (x == y) continue;
    if (y < x) std::swap(x, y);
    out.emplace_back(Ball(std::move(x)), Ball(std::move(y)));
  }
  return out;
}

std::vector<std::pair<Ball, Real>> sample_kernel_points(const LevelSet& point_level, const DimensionFunction& dim,
                                                        std::size_t count, Rng& rng) {
  std::vector<std::pair<Ball, Real>> out;
  out.reserve(count);
  const Bits bits = std::max<Bits>(point_level.precision_bits, 64);
  const Real log_floor = dim.log_delta(point_level.s).mid().rounded(bits);
  while (out.size() < count) {
    const auto k = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(point_level.size()));
    const BasicInterval& I = point_level.intervals[k];
    const Ball& x = uniform01(rng) < 0.5 ? I.a : I.b;
    const Real u = sub(Real(1, 64), uniform_real(rng), 64, MPFR_RNDN);  // (0, 1]
    Real r = exp(mul(u, log_floor, bits, MPFR_RNDN));
    if (!(r < 1)) continue;
    out.emplace_back(x, std::move(r));
  }
  return out;
}

std::vector<std::pair<Ball, Ball>> random_gap_cover(const LevelSet& level, Rng& rng) {
  const long s = level.s;
  const auto& iv = level.intervals;
  const Bits bits = std::max<Bits>(level.precision_bits, 64);
  // Each gap level gets its own cut probability, so covers range from one piece
  // to every interval separately with mixed granularity in between.
  // Gaps finer than a random level are never cut.
  const auto finest = static_cast<long>(uniform01(rng) * static_cast<double>(s + 1));
  std::vector<double> cut(s + 1, 0.0);
  for (long t = 1; t <= finest; ++t) cut[t] = uniform01(rng);

  std::vector<std::pair<Ball, Ball>> out;
  Real start = interior_point(Real::parse("-0.1", 64), Real(0, 64), uniform01(rng), bits);
  for (std::size_t g = 1; g < iv.size(); ++g) {
    const long t = s - std::countr_zero(static_cast<std::uint64_t>(g));
    if (!(uniform01(rng) < cut[t])) continue;
    const Real lo = iv[g - 1].b.upper();
    const Real hi = iv[g].a.lower();
    Real u = interior_point(lo, hi, uniform01(rng), bits);
    Real v = interior_point(lo, hi, uniform01(rng), bits);
    if (v < u) std::swap(u, v);
    out.emplace_back(Ball(std::move(start)), Ball(std::move(u)));
    start = std::move(v);
  }
  Real end = interior_point(Real(1, 64), Real::parse("1.1", 64), uniform01(rng), bits);
  out.emplace_back(Ball(std::move(start)), Ball(std::move(end)));
  return out;
}

std::vector<std::pair<Real, Real>> sample_doubling(const DimensionFunction& dim, std::size_t count, Rng& rng) {
  std::vector<std::pair<Real, Real>> out;
  out.reserve(count);
  const Bits bits = dim.bits();
  const Real log_floor = dim.log_delta(dim.levels()).mid().rounded(bits);
  const Real log_mmax = log(Real(1000, bits));
  while (out.size() < count) {
    const Real u = sub(Real(1, 64), uniform_real(rng), 64, MPFR_RNDN);  // (0, 1]
    Real r = exp(mul(u, log_floor, bits, MPFR_RNDN));
    Real m = exp(mul(uniform_real(rng), log_mmax, bits, MPFR_RNDN));
    if (!(r < 1) || !(m > 1)) continue;
    out.emplace_back(std::move(r), std::move(m));
  }
  return out;
}

}  // namespace cantor
