#pragma once

// Rate sequences r_0 > r_1 > ... -> 0 defining prefix ultrametrics
// d(x, y) = r_{N(x,y)}, and the alpha/eta regularity check.

#include "shadowlab/numeric.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shadowlab {

class RateSequence {
 public:
  using Rule = std::function<Rational(std::uint64_t)>;

  RateSequence(std::string name, Rule rule, std::optional<std::uint64_t> defined_upto = std::nullopt)
      : name_(std::move(name)), rule_(std::move(rule)), defined_upto_(defined_upto) {}

  /// r_n = 2^-n, the standard product metric.
  static RateSequence dyadic() {
    return RateSequence("dyadic", [](std::uint64_t n) { return pow2_neg(n); });
  }

  /// r_n = 1/(n+1).
  static RateSequence harmonic() {
    return RateSequence("harmonic", [](std::uint64_t n) { return Rational(1, Index(n) + 1); });
  }

  /// r'_n = beta * r_n.
  static RateSequence scaled(const RateSequence& base, const Rational& beta) {
    if (beta <= 0) throw std::invalid_argument("scale factor must be positive");
    return RateSequence(base.name() + "*" + to_string(beta),
                        [rule = base.rule_, beta](std::uint64_t n) { return beta * rule(n); }, base.defined_upto_);
  }

  /// Explicit finite table r_0, ..., r_{k-1}.
  static RateSequence table(std::string name, std::vector<Rational> values) {
    const std::uint64_t size = values.size();
    if (size == 0) throw std::invalid_argument("empty rate table");
    return RateSequence(std::move(name), [v = std::move(values)](std::uint64_t n) { return v.at(n); }, size - 1);
  }

  const std::string& name() const { return name_; }
  std::optional<std::uint64_t> defined_upto() const { return defined_upto_; }

  Rational operator()(std::uint64_t n) const {
    if (defined_upto_ && n > *defined_upto_) {
      throw ResourceLimitError("rate " + name_ + " is tabulated only up to n = " + std::to_string(*defined_upto_));
    }
    return rule_(n);
  }

  /// Least n with r_n < bound (strict) or r_n <= bound.
  std::uint64_t first_below(const Rational& bound, bool inclusive = false,
                            std::uint64_t search_limit = std::uint64_t{1} << 22) const {
    for (std::uint64_t n = 0; n <= search_limit; ++n) {
      const Rational r = (*this)(n);
      if (r < bound || (inclusive && r == bound)) return n;
    }
    throw ResourceLimitError("rate " + name_ + " does not drop below " + to_string(bound) + " within " +
                             std::to_string(search_limit) + " terms");
  }

 private:
  std::string name_;
  Rule rule_;
  std::optional<std::uint64_t> defined_upto_;
};

/// Result of checking alpha_n <= C * eta_{n+p} through the analytic bounds
/// alpha_n <= r_n and eta_n >= r_{n-1}.
struct RegularityProfile {
  std::string rate;
  std::uint64_t p = 1;
  std::uint64_t n_max = 0;
  Rational constant = 1;
  bool monotone = true;
  std::optional<std::uint64_t> first_ascent;     // first n with r_{n+1} >= r_n
  bool holds = true;                             // the inequality holds with `constant`
  std::optional<std::uint64_t> first_violation;  // first n where it fails
  Rational smallest_constant = 0;                // max_n r_n / r_{n+p-1} on the range
};

inline RegularityProfile regularity_check(const RateSequence& r, std::uint64_t p, std::uint64_t n_max,
                                          const Rational& constant = 1) {
  if (p == 0) throw std::invalid_argument("order p must be at least 1");
  RegularityProfile profile{.rate = r.name(), .p = p, .n_max = n_max, .constant = constant};
  const std::uint64_t last = n_max + p;
  for (std::uint64_t n = 0; n < last; ++n) {
    if (r(n) <= 0 || r(n + 1) >= r(n)) {
      profile.monotone = false;
      profile.first_ascent = n;
      profile.holds = false;
      profile.first_violation = n;
      return profile;
    }
  }
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const Rational alpha_bound = r(n);
    const Rational eta_bound = r(n + p - 1);
    profile.smallest_constant = std::max<Rational>(profile.smallest_constant, alpha_bound / eta_bound);
    if (alpha_bound > constant * eta_bound && profile.holds) {
      profile.holds = false;
      profile.first_violation = n;
    }
  }
  return profile;
}

}  // namespace shadowlab
