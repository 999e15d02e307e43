#pragma once

// Eventually periodic pseudo-orbits and exact shadowing errors.

#include "shadowlab/metric.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace shadowlab {

/// The sequence pre[0], ..., pre[a-1], cycle[0], ..., cycle[c-1], cycle[0], ...
/// claimed to satisfy d(shift(x^m), x^{m+1}) < delta under `metric`.
struct PseudoOrbit {
  std::vector<Point> pre;
  std::vector<Point> cycle;
  Rational delta;
  std::string metric;

  const Point& at(std::uint64_t m) const {
    if (cycle.empty()) throw std::logic_error("pseudo-orbit has an empty cycle");
    if (m < pre.size()) return pre[m];
    return cycle[(m - pre.size()) % cycle.size()];
  }

  /// Transitions m -> m+1 for m below this cover every distinct pair.
  std::uint64_t transitions() const { return pre.size() + cycle.size(); }
};

struct OrbitVerdict {
  bool ok = true;
  std::optional<std::uint64_t> failed_transition;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Exact strict check of every transition: inside the preamble, the seam
/// into the cycle, and around the cycle including the wrap.
inline OrbitVerdict verify_pseudo_orbit(const PseudoOrbit& orbit, const Metric& metric) {
  if (orbit.metric != metric.name()) {
    throw std::invalid_argument("pseudo-orbit tagged " + orbit.metric + " checked under " + metric.name());
  }
  if (orbit.cycle.empty()) return {false, std::nullopt, "empty cycle"};
  for (std::uint64_t m = 0; m < orbit.transitions(); ++m) {
    const Point& here = orbit.at(m);
    if (here.is_empty()) return {false, m, "term " + std::to_string(m) + " is the empty word (outside the shift's domain)"};
    if (!metric.is_otw() && here.is_finite()) {
      return {false, m, "term " + std::to_string(m) + " is finite; prefix ultrametrics need infinite points"};
    }
    if (!metric.closer_than(shift(here), orbit.at(m + 1), orbit.delta)) {
      return {false, m, "d(shift(x^" + std::to_string(m) + "), x^" + std::to_string(m + 1) + ") >= " +
                            format_rational(orbit.delta)};
    }
  }
  return {};
}

struct ShadowResult {
  Point point;
  Rank error_rank;           // min over m of rank(shift^m(x), x^m)
  bool exact = true;         // false: error_rank is only the lower bound cap + 1
  std::uint64_t worst_m = 0;
  std::uint64_t horizon = 0;
};

/// Number of times m after which both shift^m(x) and x^m repeat jointly.
inline std::uint64_t shadow_horizon(const Point& x, const PseudoOrbit& orbit) {
  return orbit.pre.size() + x.head().size() + std::lcm(orbit.cycle.size(), x.period().size());
}

/// sup_m d(shift^m(x), x^m), as the minimum rank over the joint period.
/// With `cap`, ranks above it are not resolved and the result may be a
/// lower bound (exact = false). `horizon_factor` widens the window, for
/// consistency checks.
inline ShadowResult shadowing_error(const Point& x, const PseudoOrbit& orbit, const Metric& metric,
                                    const std::optional<Index>& cap = std::nullopt,
                                    std::uint64_t horizon_factor = 1) {
  if (x.is_finite()) throw std::invalid_argument("a shadowing point must be infinite");
  if (orbit.cycle.empty()) throw std::invalid_argument("pseudo-orbit has an empty cycle");
  ShadowResult result{.point = x, .error_rank = Rank::infinity(), .horizon = shadow_horizon(x, orbit)};
  const std::uint64_t window = result.horizon * horizon_factor;
  bool resolved = !cap.has_value();
  Point current = x;
  for (std::uint64_t m = 0; m < window; ++m, current = shift(current)) {
    Rank r;
    if (cap) {
      if (auto within = metric.rank_within(current, orbit.at(m), *cap)) {
        r = Rank(*within);
        resolved = true;
      }
    } else {
      r = metric.distance(current, orbit.at(m)).rank;
    }
    if (r < result.error_rank) {
      result.error_rank = r;
      result.worst_m = m;
    }
  }
  if (!resolved) {
    result.exact = false;
    result.error_rank = Rank(*cap + 1);
  }
  return result;
}

}  // namespace shadowlab
