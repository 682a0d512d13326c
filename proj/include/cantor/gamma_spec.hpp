#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/ball.hpp"

namespace cantor {

/// A numeric literal of the rule grammar: decimal, ratio `p/q`, or `exp(x)`.
class Constant {
 public:
  static Constant parse(std::string_view text);

  Ball value(Bits bits) const;
  Ball log_value(Bits bits) const;
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
  std::string literal_;  // argument of exp() when is_exp_, otherwise the literal itself
  bool is_exp_ = false;
};

/// Closed-form rules s -> gamma_s.
///   ExpAffine:  exp(a*s + b)
///   Geometric:  c * q^s
///   Constant:   const(c)
///   ExpPower:   exp(a * q^s)
struct ClosedForm {
  enum class Kind { ExpAffine, Geometric, Constant, ExpPower };

  Kind kind = Kind::Constant;
  Constant p;  // a (exp forms) or c
  Constant q;  // b (ExpAffine) or q; unused for Constant

  Ball gamma(long s, Bits bits) const;
  Ball log_gamma(long s, Bits bits) const;
  /// Throws invalid-gamma unless 0 < gamma_s <= 1/32 for every s >= first.
  void validate_from(long first, Bits bits) const;
  bool summable(Bits bits) const;
  /// sum_{s >= first} gamma_s; throws tail-not-summable.
  Ball tail_sum(long first, Bits bits) const;
  /// sum_{s >= first} 2^-s log(1/gamma_s), or nullopt when it diverges.
  std::optional<Ball> robin_tail(long first, Bits bits) const;
  std::string text() const;
};

/// Convergence certificate of sum_s 2^-s log(1/gamma_s).
struct RobinSeries {
  bool converges = false;
  std::optional<Ball> value;
  std::string certificate;
};

/// Rule defining gamma_1, gamma_2, ...: an explicit head list followed by an
/// optional closed-form tail (indexed by absolute s). A bare closed form is a
/// spec with an empty head.
class GammaSpec {
 public:
  /// Parses the rule grammar
  ///   exp(a*s+b) | c*q^s | const(c) | exp(a*q^s) | list(v1,v2,...[; tail=RULE])
  /// and validates it. Throws config (syntax) or invalid-gamma.
  static GammaSpec parse(std::string_view text);
  static GammaSpec closed(ClosedForm rule);
  static GammaSpec list(std::vector<Constant> head, std::optional<ClosedForm> tail);

  Ball gamma(long s, Bits bits) const;
  Ball log_gamma(long s, Bits bits) const;
  /// Largest s for which gamma_s is defined, or nullopt when unbounded.
  std::optional<long> last_level() const;

  void validate(Bits bits = 256) const;
  /// sum_{s>=1} gamma_s.
  Ball sum(Bits bits) const;
  RobinSeries robin(Bits bits) const;

  std::string text() const;
  const std::vector<Constant>& head() const noexcept { return head_; }
  const std::optional<ClosedForm>& tail() const noexcept { return tail_; }

 private:
  std::vector<Constant> head_;
  std::optional<ClosedForm> tail_;
};

}  // namespace cantor
