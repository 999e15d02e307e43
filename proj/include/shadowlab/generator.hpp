#pragma once

// Seeded random points and pseudo-orbits.
//
// A pseudo-orbit is produced by repair: pick a backbone point y in the shift
// space, take the terms x^m = shift^m(y) truncated to depth D + 1, and append
// a random continuation to each. Then shift(x^m) and x^{m+1} agree on D
// letters. D is either the depth that forces d < delta for the metric, or a
// shallower random depth that is kept only if the exact check still passes.

#include "shadowlab/pseudo_orbit.hpp"
#include "shadowlab/shadow.hpp"

#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace shadowlab {

using Rng = std::mt19937_64;

class GeneratorFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OrbitShape {
  std::size_t max_pre = 4;           // pseudo-orbit preamble length
  std::size_t max_cycle = 8;         // pseudo-orbit cycle length
  std::size_t max_point_pre = 4;     // preamble length of random tails
  std::size_t max_point_period = 4;  // period length of points
  std::size_t max_attempts = 64;
};

/// Per-cell generator so results do not depend on evaluation order.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32U)};
  return Rng(seq);
}

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline Word random_word(Rng& rng, std::size_t length, Letter max_letter) {
  Word w(length);
  for (Letter& c : w) c = static_cast<Letter>(uniform(rng, 1, max_letter));
  return w;
}

/// Random eventually periodic point (preamble <= max_pre, period <= max_period)
/// of the full shift over {1..max_letter}.
inline Point random_point(Rng& rng, Letter max_letter, std::size_t max_pre = 4, std::size_t max_period = 4) {
  Word pre = random_word(rng, uniform(rng, 0, max_pre), max_letter);
  Word per = random_word(rng, uniform(rng, 1, max_period), max_letter);
  return Point::infinite(std::move(pre), std::move(per));
}

/// Random finite word of length <= max_length.
inline Point random_finite_point(Rng& rng, Letter max_letter, std::size_t max_length) {
  return Point::finite(random_word(rng, uniform(rng, 0, max_length), max_letter));
}

/// Samples points that share random prefixes, so that distances take
/// small nonzero ranks often. Common prefixes between distinct samples
/// are kept at most `max_common` long.
struct PointSampler {
  Letter max_letter = 3;
  std::size_t max_common = 5;
  std::size_t max_pre = 4;
  std::size_t max_period = 4;
  unsigned finite_percent = 0;  // chance of a finite point
  unsigned equal_percent = 5;   // chance of repeating the base point

  Point fresh(Rng& rng) const {
    if (uniform(rng, 1, 100) <= finite_percent) return random_finite_point(rng, max_letter, max_pre + max_period);
    return random_point(rng, max_letter, max_pre, max_period);
  }

  /// A point sharing a random prefix with `base`.
  Point near(Rng& rng, const Point& base) const {
    if (uniform(rng, 1, 100) <= equal_percent) return base;
    const std::size_t keep = uniform(rng, 0, max_common);
    Word prefix = base.take(keep);
    const Point tail = fresh(rng);
    prefix.insert(prefix.end(), tail.head().begin(), tail.head().end());
    if (tail.is_finite()) return Point::finite(std::move(prefix));
    return Point::infinite(std::move(prefix), tail.period());
  }

  /// `count` points, pairwise equal or with common prefix <= max_common.
  std::vector<Point> related(Rng& rng, std::size_t count) const {
    for (;;) {
      std::vector<Point> out{fresh(rng)};
      while (out.size() < count) out.push_back(near(rng, out[uniform(rng, 0, out.size() - 1)]));
      bool ok = true;
      for (std::size_t i = 0; i < count && ok; ++i) {
        for (std::size_t j = i + 1; j < count && ok; ++j) {
          const auto c = common_prefix_length(out[i], out[j]);
          ok = !c || *c <= max_common;
        }
      }
      if (ok) return out;
    }
  }
};

namespace detail {

inline std::vector<Letter> allowed_letters(const BlockShift& space, std::span<const Letter> context) {
  std::vector<Letter> out;
  Word block(context.begin(), context.end());
  block.push_back(0);
  for (Letter c = 1; c <= space.max_letter(); ++c) {
    block.back() = c;
    if (space.allows_block(block)) out.push_back(c);
  }
  return out;
}

/// A random point of `space` that starts with `prefix`, or nullopt on a
/// dead end. For order p >= 2 this walks the de Bruijn-style graph on
/// (p-1)-letter states and closes the period at the first repeated state.
inline std::optional<Point> try_extension(Rng& rng, const BlockShift& space, Word prefix, const OrbitShape& shape) {
  const std::size_t p = space.order();
  if (p == 1) {
    const auto letters = allowed_letters(space, {});
    if (letters.empty()) return std::nullopt;
    for (Letter c : prefix) {
      if (!space.allows_block(std::span<const Letter>(&c, 1))) return std::nullopt;
    }
    auto pick = [&](std::size_t n) {
      Word w(n);
      for (Letter& c : w) c = letters[uniform(rng, 0, letters.size() - 1)];
      return w;
    };
    Word pre = pick(uniform(rng, 0, shape.max_point_pre));
    prefix.insert(prefix.end(), pre.begin(), pre.end());
    return Point::infinite(std::move(prefix), pick(uniform(rng, 1, shape.max_point_period)));
  }
  Word seq = std::move(prefix);
  while (seq.size() < p - 1) seq.push_back(static_cast<Letter>(uniform(rng, 1, space.max_letter())));
  std::map<Word, std::size_t> seen;  // state -> position of its last letter
  auto state_at = [&](std::size_t t) { return Word(seq.begin() + static_cast<std::ptrdiff_t>(t + 2 - p), seq.begin() + static_cast<std::ptrdiff_t>(t + 1)); };
  seen.emplace(state_at(seq.size() - 1), seq.size() - 1);
  for (std::size_t steps = 0; steps < 4096; ++steps) {
    const auto state = state_at(seq.size() - 1);
    const auto letters = allowed_letters(space, state);
    if (letters.empty()) return std::nullopt;
    seq.push_back(letters[uniform(rng, 0, letters.size() - 1)]);
    const std::size_t t2 = seq.size() - 1;
    auto [it, inserted] = seen.try_emplace(state_at(t2), t2);
    if (!inserted) {
      const std::size_t t1 = it->second;
      Word pre(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(t1 + 1));
      Word per(seq.begin() + static_cast<std::ptrdiff_t>(t1 + 1), seq.end());
      Point x = Point::infinite(std::move(pre), std::move(per));
      if (!space.contains(x)) return std::nullopt;
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline Point random_extension(Rng& rng, const BlockShift& space, const Word& prefix, const OrbitShape& shape = {}) {
  for (std::size_t attempt = 0; attempt < shape.max_attempts; ++attempt) {
    if (auto x = detail::try_extension(rng, space, prefix, shape)) return *x;
  }
  throw GeneratorFailure("no point of the shift space extends " + format_word(prefix));
}

/// Random delta-pseudo-orbit in `space` under `metric`, checked exactly.
inline PseudoOrbit random_pseudo_orbit(Rng& rng, const Metric& metric, const Rational& delta, const BlockShift& space,
                                       const OrbitShape& shape = {}) {
  const std::size_t full_depth = metric.agreement_depth(delta);
  for (std::size_t attempt = 0; attempt < shape.max_attempts; ++attempt) {
    Point backbone;
    try {
      backbone = random_extension(rng, space, {}, shape);
    } catch (const GeneratorFailure&) {
      continue;
    }
    const std::size_t y_pre = backbone.head().size();
    const std::size_t y_per = backbone.period().size();
    if (y_pre > shape.max_pre || y_per > shape.max_cycle || y_per > shape.max_point_period) continue;
    const std::size_t pre_len = y_pre + uniform(rng, 0, shape.max_pre - y_pre);
    const std::size_t cycle_len = y_per * uniform(rng, 1, shape.max_cycle / y_per);

    std::size_t depth = uniform(rng, 0, 1) == 0 ? full_depth : uniform(rng, 0, full_depth);
    for (;;) {
      PseudoOrbit orbit{.delta = delta, .metric = metric.name()};
      try {
        Point base = backbone;
        for (std::size_t m = 0; m < pre_len + cycle_len; ++m, base = shift(base)) {
          Point term = random_extension(rng, space, base.take(depth + 1), shape);
          (m < pre_len ? orbit.pre : orbit.cycle).push_back(std::move(term));
        }
      } catch (const GeneratorFailure&) {
        break;
      }
      if (verify_pseudo_orbit(orbit, metric)) return orbit;
      if (depth >= full_depth) break;
      depth = full_depth;
    }
  }
  throw GeneratorFailure("could not produce a " + format_rational(delta) + "-pseudo-orbit under " + metric.name());
}

}  // namespace shadowlab
