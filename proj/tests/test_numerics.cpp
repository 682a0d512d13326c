#include "doctest.h"

#include "cantor/ball.hpp"
#include "cantor/chain.hpp"
#include "cantor/error.hpp"
#include "cantor/gamma_spec.hpp"
#include "cantor/root.hpp"
#include "test_util.hpp"

using namespace cantor;
using namespace cantor::testing;

TEST_CASE("real parse and round trip") {
  const Real x = Real::parse("0.1", 200);
  const std::string text = x.to_string();
  CHECK(Real::parse(text, 200) == x);
  CHECK(Real::pow2(-10, 64) == Real::parse("0.0009765625", 64));
  CHECK_THROWS_AS(Real::parse("abc", 64), Error);
  CHECK(round_trip_digits(53) == 17);
}

TEST_CASE("ball parse encloses the decimal value") {
  const Ball tenth = Ball::parse("0.1", 64);
  CHECK(!tenth.is_exact());
  CHECK(tenth.contains(Real::parse("0.1", 512)));
  const Ball third = Ball::parse("1/3", 128);
  CHECK((third * Ball(3, 128)).contains(Real(1, 64)));
  CHECK(Ball::parse("0.5", 64).is_exact());
}

TEST_CASE("ball arithmetic encloses the exact result") {
  const Ball a = Ball::parse("1/7", 96);
  const Ball b = Ball::parse("2/3", 96);
  const Real a_hi = Real::parse("1", 1024) / Real(7, 1024);
  const Real b_hi = Real::parse("2", 1024) / Real(3, 1024);
  CHECK((a + b).contains(a_hi + b_hi));
  CHECK((a - b).contains(a_hi - b_hi));
  CHECK((a * b).contains(a_hi * b_hi));
  CHECK((a / b).contains(a_hi / b_hi));
  CHECK(sqrt(b).contains(sqrt(b_hi)));
  CHECK(exp(a).contains(exp(a_hi)));
  CHECK(log(b).contains(log(b_hi)));
  CHECK(pow(b, 5).contains(b_hi * b_hi * b_hi * b_hi * b_hi));
  CHECK_THROWS_AS(a / Ball::hull(Real(-1, 64), Real(1, 64)), Error);
}

TEST_CASE("certified sign and comparisons") {
  const Ball x = Ball::hull(Real::parse("0.1", 64), Real::parse("0.2", 64));
  CHECK(x.certainly_positive());
  CHECK(x.certified_sign() == 1);
  CHECK(!Ball::hull(Real(-1, 64), Real(1, 64)).certified_sign().has_value());
  CHECK(Ball(0, 64).certified_sign() == 0);
  CHECK(certainly_less(x, Ball(1, 64)));
  CHECK(!certainly_less(x, Ball::parse("0.15", 64)));
}

TEST_CASE("precision context escalates up to the cap") {
  PrecisionContext ctx(128, 512);
  CHECK(ctx.escalated().bits() == 256);
  CHECK(ctx.escalated().escalated().bits() == 512);
  CHECK_THROWS_AS(ctx.escalated().escalated().escalated(), Error);
  CHECK(ctx.at_least(300).bits() == 300);
  CHECK(ctx.at_least(5000).bits() == 512);
}

TEST_CASE("gamma rules parse and validate") {
  const Bits bits = 256;
  CHECK(default_gamma().gamma(1, bits).contains(exp(Real(-4, bits))));
  CHECK(default_gamma().gamma(3, bits).contains(exp(Real(-20, bits))));
  const auto geometric = GammaSpec::parse("1/32*1^s");
  CHECK(geometric.gamma(7, bits).contains(Real::pow2(-5, 64)));
  const auto constant = GammaSpec::parse("const(1/64)");
  CHECK(constant.gamma(2, bits).contains(Real::pow2(-6, 64)));
  const auto listed = GammaSpec::parse("list(1/32, 1/64; tail=const(1/128))");
  CHECK(listed.gamma(2, bits).contains(Real::pow2(-6, 64)));
  CHECK(listed.gamma(5, bits).contains(Real::pow2(-7, 64)));
  const auto finite = GammaSpec::parse("list(1/32, 1/64)");
  CHECK(finite.last_level() == 2);

  CHECK_THROWS_AS(GammaSpec::parse("const(1/16)"), Error);   // gamma > 1/32
  CHECK_THROWS_AS(GammaSpec::parse("exp(-3*s)"), Error);     // gamma_1 = e^-3 > 1/32
  CHECK_THROWS_AS(GammaSpec::parse("exp(-8*s+"), Error);     // syntax
  CHECK(error_code_of([] { GammaSpec::parse("const(0.5)"); }) == ErrorCode::InvalidGamma);
  CHECK(error_code_of([] { GammaSpec::parse("exp(-8*s+"); }) == ErrorCode::Config);
}

TEST_CASE("tail sums match partial sums") {
  const Bits bits = 256;
  // sum e^{-8s+4} = e^-4 / (1 - e^-8)
  const Ball sum = default_gamma().sum(bits);
  Real partial(0, bits);
  for (long s = 1; s <= 40; ++s) partial += exp(Real(-8 * s + 4, bits));
  CHECK(close(sum.mid(), partial, Real::parse("1e-70", 64)));
  const Ball geo = GammaSpec::parse("1/32*1/2^s").sum(bits);
  CHECK(geo.contains(Real::pow2(-5, 64)));  // (1/32) * sum 2^-s = 1/32

  // sum 2^-s log(1/gamma_s) for the default rule is 12
  const RobinSeries robin = default_gamma().robin(bits);
  REQUIRE(robin.converges);
  CHECK(robin.value->contains(Real(12, 64)));
  CHECK(!GammaSpec::parse("exp(-4^s)").robin(bits).converges);
}

TEST_CASE("chain values match the explicit polynomials") {
  const Bits bits = 256;
  const Real x = Real::parse("0.3", bits);
  const Ball r1 = r_value(1, default_gamma(), bits);
  const Ball p2 = Ball(x) * (Ball(x) - Ball(1, bits));
  const Ball p4 = p2 * (p2 + r1);
  CHECK(eval_chain(x, 0, default_gamma(), PrecisionContext(bits, 4096)).overlaps(p2));
  CHECK(eval_chain(x, 1, default_gamma(), PrecisionContext(bits, 4096)).overlaps(p4));
  // r_s = gamma_s r_{s-1}^2: log r_2 = -12 + 2 (-4)
  CHECK(log(r_value(2, default_gamma(), bits)).contains(Real(-20, 64)));
  CHECK(log(delta_value(2, default_gamma(), bits)).contains(Real(-16, 64)));
}

TEST_CASE("chain evaluation is contained at four times the precision") {
  const auto xs = {"0.25", "0.0186", "0.5", "0.981336", "0.999"};
  for (const char* text : xs) {
    for (long s = 1; s <= 4; ++s) {
      const Real x = Real::parse(text, 128);
      const Ball lo = eval_chain(x, s, default_gamma(), PrecisionContext(128, 128));
      const Ball hi = eval_chain(x, s, default_gamma(), PrecisionContext(512, 512));
      CHECK(lo.contains(hi.mid()));
    }
  }
}

TEST_CASE("chain evaluation escalates to meet a tolerance") {
  const Real x = Real::parse("0.0186", 64);
  const Real tol = Real::pow2(-300, 64);
  const Ball v = eval_chain(x, 3, default_gamma(), PrecisionContext(64, 4096), tol);
  CHECK(v.rad() <= tol);
  CHECK(error_code_of([&] { eval_chain(x, 3, default_gamma(), PrecisionContext(64, 128), tol); }) ==
        ErrorCode::PrecisionExhausted);
}

TEST_CASE("bisection reproduces the quadratic-formula roots") {
  const Bits bits = 256;
  const Ball r1 = r_value(1, default_gamma(), bits);
  // x(x-1) + r_1 = 0  =>  x = (1 -+ sqrt(1 - 4 r_1)) / 2
  const Ball disc = sqrt(Ball(1, bits) - ldexp(r1, 2));
  const Ball c = ldexp(Ball(1, bits) - disc, -1);
  const Ball d = ldexp(Ball(1, bits) + disc, -1);
  const CertifiedFunction f = [&](const Real& x, Bits b) {
    const Ball bx(x.rounded(b));
    return bx * (bx - Ball(1, b)) + r_value(1, default_gamma(), b);
  };
  const Real tol = Real::pow2(-200, 64);
  const PrecisionContext ctx(bits, 4096);
  const RootEnclosure left = refine_root(f, {Real(0, bits), Real::parse("0.5", bits)}, tol, ctx);
  const RootEnclosure right = refine_root(f, {Real::parse("0.5", bits), Real(1, bits)}, tol, ctx);
  CHECK(left.width() <= tol);
  CHECK(left.ball().overlaps(c));
  CHECK(right.ball().overlaps(d));
  CHECK(close(left.lo, Real::parse("1.8663983155980919789e-2", bits), Real::parse("1e-20", 64)));
  // no sign change
  CHECK_THROWS_AS(refine_root(f, {Real::parse("0.1", bits), Real::parse("0.5", bits)}, tol, ctx), Error);
}
