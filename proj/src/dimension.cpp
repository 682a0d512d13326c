#include "cantor/dimension.hpp"

#include <string>

#include "cantor/error.hpp"

namespace cantor {

DimensionFunction::DimensionFunction(GammaSpec spec, long levels, Bits bits) : spec_(std::move(spec)), bits_(bits) {
  if (levels < 0) throw Error(ErrorCode::Config, "dimension table needs levels >= 0");
  log_delta_.reserve(levels + 1);
  log_delta_.emplace_back(bits);
  for (long s = 1; s <= levels; ++s) log_delta_.push_back(log_delta_.back() + spec_.log_gamma(s, bits));
}

Ball DimensionFunction::log_delta(long s) const {
  if (s < static_cast<long>(log_delta_.size())) return log_delta_.at(s);
  Ball value = log_delta_.back();
  for (long k = levels() + 1; k <= s; ++k) {
    try {
      value += spec_.log_gamma(k, bits_);
    } catch (const Error& e) {
      throw Error(ErrorCode::TableExhausted, std::string("cannot extend delta table: ") + e.what());
    }
  }
  return value;
}

Ball DimensionFunction::delta(long s) const { return exp(log_delta(s)); }

Ball DimensionFunction::eta(const Real& t) const {
  if (t.sign() <= 0 || t > 1) throw Error(ErrorCode::Config, "eta(t) requires 0 < t <= 1");
  if (t == 1) return Ball(0, bits_);
  const Ball log_t = log(Ball(t)).rounded(bits_);

  // Locate the knot interval by midpoints: log delta_{s+1} < log t <= log delta_s.
  long s = 0;
  while (!(log_delta(s + 1).mid() < log_t.mid())) ++s;
  const Ball upper_knot = log_delta(s);
  const Ball lower_knot = log_delta(s + 1);
  const Ball step = upper_knot - lower_knot;  // log(1/gamma_{s+1}) > 0

  // t within the enclosure of a knot: resolve to the knot value, with a radius
  // covering the distance to the knot times the steepest adjacent slope.
  const auto at_knot = [&](const Ball& knot, long value, const Ball& slope_den) {
    const Real dist = add(abs(sub(log_t.mid(), knot.mid(), 64, MPFR_RNDU)), add(log_t.rad(), knot.rad(), 64, MPFR_RNDU),
                          64, MPFR_RNDU);
    const Real slope = div(Real(1, 64), slope_den.lower().rounded(64, MPFR_RNDD), 64, MPFR_RNDU);
    return Ball(Real(value, bits_), mul(dist, slope, 64, MPFR_RNDU));
  };
  const Ball min_step = Ball(const_log2(64, MPFR_RNDD) * Real(5, 64));  // gamma <= 1/32
  if (log_t.overlaps(upper_knot)) return at_knot(upper_knot, s, min_step);
  if (log_t.overlaps(lower_knot)) return at_knot(lower_knot, s + 1, min_step);
  return Ball(s, bits_) + (upper_knot - log_t) / step;
}

Ball DimensionFunction::h(const Real& t) const {
  if (t.sign() <= 0) throw Error(ErrorCode::Config, "h(t) requires t > 0");
  if (t > 1) return Ball(1, bits_);
  return exp2(-eta(t));
}

Ball DimensionFunction::h(const Ball& t) const {
  if (t.is_exact()) return h(t.mid());
  Real lo = t.lower();
  if (lo.sign() <= 0) throw Error(ErrorCode::Config, "h(t) requires t > 0");
  return Ball::hull(h(lo).lower(), h(t.upper()).upper());
}

CheckReport verify_doubling(const DimensionFunction& dim, const std::vector<std::pair<Real, Real>>& samples) {
  CheckReport report;
  report.check = "doubling";
  report.parameters = {{"levels", std::to_string(dim.levels())}};
  Real worst(0, 64);
  for (const auto& [r, m] : samples) {
    if (!(m > 1) || r.sign() <= 0 || r > 1) throw Error(ErrorCode::Config, "doubling sample needs 0 < r <= 1 < m");
    const Ball lhs = dim.h(r);
    const Ball scaled = Ball(m) * dim.h(r / m);
    ++report.samples;
    const Ball ratio = lhs / scaled;
    if (ratio.mid() > worst) worst = ratio.mid().rounded(64);
    if (!certainly_less(lhs, scaled)) {
      report.fail("r=" + r.to_string(20) + " m=" + m.to_string(20) + " ratio=" + ratio.mid().to_string(12));
    }
  }
  report.worst_ratio = worst.to_string(12);
  return report;
}

CheckReport verify_knot_slopes(const DimensionFunction& dim) {
  CheckReport report;
  report.check = "knot-slopes";
  report.parameters = {{"levels", std::to_string(dim.levels())}};
  const Bits bits = dim.bits();
  const Ball one_32 = Ball::parse("1/32", bits);
  const Ball fifth = Ball::parse("1/5", bits);
  Real worst(0, 64);
  for (long s = 0; s < dim.levels(); ++s) {
    const Ball step = dim.log_delta(s) - dim.log_delta(s + 1);
    const Ball slope = ball_log2(bits) / step;
    ++report.samples;
    if (slope.mid() > worst) worst = slope.mid().rounded(64);
    // slope <= 1/5 is equivalent to gamma_{s+1} <= 1/32, which is exact for dyadic gammas
    const Ball g = dim.spec().gamma(s + 1, bits);
    if (!(certainly_less_equal(slope, fifth) || certainly_less_equal(g, one_32) ||
          (g.is_exact() && g.mid() <= one_32.mid()))) {
      report.fail("s=" + std::to_string(s) + " slope=" + slope.mid().to_string(12));
    }
  }
  report.worst_ratio = worst.to_string(12);
  return report;
}

}  // namespace cantor
