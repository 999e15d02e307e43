#pragma once

// Shadowing-point constructions: first letters of the pseudo-orbit for
// prefix ultrametrics, and the one-letter rule for prefix-shift-compatible
// OTW metrics.

#include "shadowlab/pseudo_orbit.hpp"
#include "shadowlab/validation.hpp"

#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace shadowlab {

/// A shift of finite order p: a point belongs to it iff each of its length-p
/// blocks is allowed. Bounded shifts also restrict letters to {1..max_letter};
/// for the full shift max_letter only bounds random sampling.
class BlockShift {
 public:
  BlockShift(std::uint64_t order, Letter max_letter, std::vector<Word> forbidden, bool bounded = true)
      : order_(order), max_letter_(max_letter), bounded_(bounded), forbidden_(forbidden.begin(), forbidden.end()) {
    if (order_ == 0) throw std::invalid_argument("shift order must be at least 1");
    if (max_letter_ == 0) throw std::invalid_argument("alphabet must be nonempty");
    for (const Word& w : forbidden_) {
      if (w.size() != order_) throw std::invalid_argument("forbidden block " + format_word(w) + " has wrong length");
    }
  }

  static BlockShift full(Letter sampling_max_letter) { return BlockShift(1, sampling_max_letter, {}, false); }

  std::uint64_t order() const { return order_; }
  Letter max_letter() const { return max_letter_; }
  bool bounded() const { return bounded_; }
  bool is_full() const { return !bounded_ && forbidden_.empty(); }

  bool allows_block(std::span<const Letter> block) const {
    if (bounded_) {
      for (Letter c : block) {
        if (c == 0 || c > max_letter_) return false;
      }
    }
    return !forbidden_.contains(Word(block.begin(), block.end()));
  }

  /// First length-p block of x that is not allowed.
  std::optional<Word> first_disallowed_block(const Point& x) const {
    if (x.is_finite()) throw std::invalid_argument("membership is checked on infinite points");
    const std::size_t windows = x.head().size() + x.period().size();
    Word block(order_);
    for (std::size_t i = 0; i < windows; ++i) {
      for (std::size_t t = 0; t < order_; ++t) block[t] = x.at(i + t);
      if (!allows_block(block)) return block;
    }
    return std::nullopt;
  }

  bool contains(const Point& x) const { return !first_disallowed_block(x).has_value(); }

 private:
  std::uint64_t order_;
  Letter max_letter_;
  bool bounded_;
  std::set<Word> forbidden_;
};

struct ProductShadow {
  Point point;
  std::optional<Word> disallowed_block;  // set when the block oracle rejects z
};

/// z_m = first letter of x^m. Requires a prefix ultrametric, infinite
/// orbit points and delta <= r_{p-1}, the lower bound for eta_p.
inline ProductShadow product_shadow_point(const PseudoOrbit& orbit, std::uint64_t order, const Metric& metric,
                                          const BlockShift* space = nullptr) {
  if (metric.is_otw()) throw std::invalid_argument("product_shadow_point needs a prefix ultrametric");
  if (order == 0) throw std::invalid_argument("shift order must be at least 1");
  if (orbit.cycle.empty()) throw std::invalid_argument("pseudo-orbit has an empty cycle");
  if (orbit.delta > metric.rate_sequence()(order - 1)) {
    throw std::invalid_argument("delta exceeds r_{p-1} = " + to_string(metric.rate_sequence()(order - 1)));
  }
  auto first_letters = [](const std::vector<Point>& terms) {
    Word w;
    for (const Point& t : terms) {
      if (t.is_finite()) throw std::invalid_argument("product model pseudo-orbits use infinite points");
      w.push_back(t.at(0));
    }
    return w;
  };
  ProductShadow out{.point = Point::infinite(first_letters(orbit.pre), first_letters(orbit.cycle))};
  if (space) out.disallowed_block = space->first_disallowed_block(out.point);
  return out;
}

/// Parameters of the one-letter construction for a given delta.
struct GoodShadowPlan {
  std::uint64_t j = 0;       // 2^-j <= delta < 2^-(j-1)
  std::uint64_t n = 0;       // N = j - 1, F = {p_1, ..., p_N}
  Letter fresh = 0;          // smallest letter occurring in no word of F
  std::set<Letter> singles;  // letters a with the one-letter word (a) in F
};

inline GoodShadowPlan plan_good_shadow(const Enumeration& p, const Rational& delta) {
  if (delta <= 0 || delta > Rational(1, 4)) throw std::invalid_argument("delta must lie in (0, 1/4]");
  GoodShadowPlan plan;
  plan.j = 1;
  while (pow2_neg(plan.j) > delta) ++plan.j;
  plan.n = plan.j - 1;
  const ValidationReport check = validate_pscomp(p, plan.n);
  if (!check.ok()) {
    throw std::invalid_argument(p.name() + " is not prefix-shift-compatible on its first " + std::to_string(plan.n) +
                                " entries: " + check.violations.front().detail);
  }
  std::set<Letter> used;
  for (std::uint64_t i = 1; i <= plan.n; ++i) {
    const Word w = p.word_at(i);
    used.insert(w.begin(), w.end());
    if (w.size() == 1) plan.singles.insert(w.front());
  }
  plan.fresh = 1;
  while (used.contains(plan.fresh)) ++plan.fresh;
  return plan;
}

/// x_{n+1} = a when the one-letter word (a) lies in F and prefixes x^n,
/// otherwise the fresh letter. Returned in canonical eventually periodic form.
inline Point otw_good_shadow_point(const Enumeration& p, const PseudoOrbit& orbit, const Rational& delta) {
  if (orbit.cycle.empty()) throw std::invalid_argument("pseudo-orbit has an empty cycle");
  const GoodShadowPlan plan = plan_good_shadow(p, delta);
  auto letters = [&](const std::vector<Point>& terms) {
    Word w;
    for (const Point& t : terms) {
      const bool determined = !t.is_empty() && plan.singles.contains(t.at(0));
      w.push_back(determined ? t.at(0) : plan.fresh);
    }
    return w;
  };
  return Point::infinite(letters(orbit.pre), letters(orbit.cycle));
}

}  // namespace shadowlab
