#pragma once

// Lipschitz probe: random delta-pseudo-orbits on a grid of deltas, a
// shadowing-point constructor, and the exact worst error against L * delta.

#include "shadowlab/generator.hpp"
#include "shadowlab/shadow.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace shadowlab {

using ShadowConstructor = std::function<Point(const PseudoOrbit&)>;

struct ProbeConfig {
  std::string system;
  Rational L = 1;
  Rational delta0 = 1;
  std::vector<Rational> grid;
  std::uint64_t trials = 200;
  std::uint64_t seed = 1;
  OrbitShape shape;
};

struct ProbeRow {
  Rational delta;
  std::uint64_t trials = 0;
  std::uint64_t generator_failures = 0;
  std::uint64_t constructor_failures = 0;
  Rank worst_rank;  // minimum error rank over the trials
  std::string worst_value;
  std::vector<Rank> error_ranks;  // one per successful trial, in trial order
  bool pass = false;
  std::string note;
};

struct LipschitzProbe {
  ProbeConfig config;
  std::string metric;
  std::vector<ProbeRow> rows;

  bool pass() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const ProbeRow& r) { return r.pass; });
  }
};

/// Dyadic grid 2^-from, ..., 2^-to.
inline std::vector<Rational> dyadic_grid(std::uint64_t from, std::uint64_t to) {
  std::vector<Rational> grid;
  for (std::uint64_t k = from; k <= to; ++k) grid.push_back(pow2_neg(k));
  return grid;
}

inline LipschitzProbe lipschitz_probe(const Metric& metric, const BlockShift& space, const ShadowConstructor& construct,
                                      const ProbeConfig& config) {
  if (config.L <= 0 || config.delta0 <= 0) throw std::invalid_argument("L and delta0 must be positive");
  if (config.grid.empty()) throw std::invalid_argument("empty delta grid");
  for (const Rational& d : config.grid) {
    if (d <= 0 || d > config.delta0) {
      throw std::invalid_argument("grid value " + format_rational(d) + " is outside (0, delta0]");
    }
  }
  LipschitzProbe probe{.config = config, .metric = metric.name()};
  for (std::size_t cell = 0; cell < config.grid.size(); ++cell) {
    Rng rng = make_rng(config.seed, cell);
    ProbeRow row{.delta = config.grid[cell], .trials = config.trials, .worst_rank = Rank::infinity()};
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      PseudoOrbit orbit;
      try {
        orbit = random_pseudo_orbit(rng, metric, row.delta, space, config.shape);
      } catch (const GeneratorFailure& e) {
        if (row.generator_failures++ == 0) row.note = e.what();
        continue;
      }
      try {
        const Point x = construct(orbit);
        const Rank r = shadowing_error(x, orbit, metric).error_rank;
        row.error_ranks.push_back(r);
        row.worst_rank = min(row.worst_rank, r);
      } catch (const std::exception& e) {
        if (row.constructor_failures++ == 0 && row.note.empty()) row.note = e.what();
      }
    }
    row.worst_value = metric.value_string(row.worst_rank);
    row.pass = row.generator_failures == 0 && row.constructor_failures == 0 &&
               metric.value_at_most(row.worst_rank, config.L * row.delta);
    probe.rows.push_back(std::move(row));
  }
  return probe;
}

/// The one-letter construction for a prefix-shift-compatible enumeration.
inline ShadowConstructor good_otw_constructor(std::shared_ptr<const Enumeration> p) {
  return [p = std::move(p)](const PseudoOrbit& orbit) { return otw_good_shadow_point(*p, orbit, orbit.delta); };
}

/// First letters of the orbit; throws if z leaves the shift space.
inline ShadowConstructor product_constructor(Metric metric, BlockShift space) {
  return [metric = std::move(metric), space = std::move(space)](const PseudoOrbit& orbit) {
    ProductShadow z = product_shadow_point(orbit, space.order(), metric, &space);
    if (z.disallowed_block) {
      throw std::runtime_error("shadowing point contains the disallowed block " + format_word(*z.disallowed_block));
    }
    return z.point;
  };
}

}  // namespace shadowlab
