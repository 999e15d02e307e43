#pragma once

// Exact ultrametrics on points: OTW metrics d_P(x, y) = 2^-i, where i is the
// first index j at which exactly one of x, y has p_j as a prefix, and prefix
// ultrametrics d(x, y) = r_{N(x,y)} on infinite points.

#include "shadowlab/enumeration.hpp"
#include "shadowlab/numeric.hpp"
#include "shadowlab/rate.hpp"
#include "shadowlab/word.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace shadowlab {

struct UltraDistance {
  enum class Model { Otw, Rate };

  Model model = Model::Otw;
  std::string model_name;  // e.g. "otw:block", "rate:dyadic"
  Rank rank;
  std::string value;  // "0", "2^-n" (OTW) or the exact rational r_n

  friend bool operator==(const UltraDistance&, const UltraDistance&) = default;
};

/// Ranks only compare within one model; larger rank means smaller distance.
inline bool closer(const UltraDistance& a, const UltraDistance& b) {
  if (a.model_name != b.model_name) {
    throw std::logic_error("cannot compare " + a.model_name + " with " + b.model_name);
  }
  return a.rank > b.rank;
}

namespace detail {

/// The (c+1)-letter prefixes of x and y, where c is their common prefix
/// length; every distinguishing word extends one of them.
inline std::vector<Word> shortest_distinguishing_words(const Point& x, const Point& y, std::size_t common) {
  std::vector<Word> out;
  if (x.has_length_at_least(common + 1)) out.push_back(x.take(common + 1));
  if (y.has_length_at_least(common + 1)) out.push_back(y.take(common + 1));
  return out;
}

inline bool distinguishes(std::span<const Letter> w, const Point& x, const Point& y) {
  return is_prefix(w, x) != is_prefix(w, y);
}

inline std::string otw_value(const Rank& r) { return r.is_infinite() ? "0" : "2^-" + r.value().str(); }

}  // namespace detail

/// Least index j with p_j a prefix of exactly one of x, y; infinite rank
/// when x = y. The scan is bounded by the index of the shortest
/// distinguishing word. For prefix-closed listings that bound is itself the
/// answer, since every other distinguishing word extends a shortest one.
inline Rank otw_rank(const Enumeration& p, const Point& x, const Point& y) {
  const auto common = common_prefix_length(x, y);
  if (!common) return Rank::infinity();
  const auto candidates = detail::shortest_distinguishing_words(x, y, *common);
  const Index bound = p.first_index_among(candidates);
  if (p.prefix_closed_by_construction()) return Rank(bound);
  for (Index j = 1; j < bound; ++j) {
    if (detail::distinguishes(p.word_at(j), x, y)) return Rank(j);
  }
  return Rank(bound);
}

inline UltraDistance otw_distance(const Enumeration& p, const Point& x, const Point& y) {
  Rank r = otw_rank(p, x, y);
  return {UltraDistance::Model::Otw, "otw:" + p.name(), r, detail::otw_value(r)};
}

/// Plain linear scan j = 1..scan_limit; nullopt when no index up to the
/// limit distinguishes (always the case for x = y).
inline std::optional<Index> otw_distance_oracle(const Enumeration& p, const Point& x, const Point& y,
                                                const Index& scan_limit) {
  if (scan_limit < 1) throw std::invalid_argument("scan limit must be at least 1");
  for (Index j = 1; j <= scan_limit; ++j) {
    const Word w = p.word_at(j);
    if (is_prefix(w, x) != is_prefix(w, y)) return j;
  }
  return std::nullopt;
}

/// d(x, y) = r_{N(x,y)} on infinite points.
inline UltraDistance prefix_ultrametric_distance(const RateSequence& r, const Point& x, const Point& y) {
  const auto n = first_diff_index(x, y);
  UltraDistance d{UltraDistance::Model::Rate, "rate:" + r.name(), Rank::infinity(), "0"};
  if (n) {
    d.rank = Rank(Index(*n));
    d.value = to_string(r(*n));
  }
  return d;
}

/// A runtime-selected metric: an OTW metric over a shared enumeration, or a
/// prefix ultrametric over a rate sequence.
class Metric {
 public:
  static Metric otw(std::shared_ptr<const Enumeration> e) {
    if (!e) throw std::invalid_argument("null enumeration");
    Metric m;
    m.enumeration_ = std::move(e);
    return m;
  }

  static Metric rate(RateSequence r) {
    Metric m;
    m.rate_ = std::move(r);
    return m;
  }

  bool is_otw() const { return enumeration_ != nullptr; }
  const Enumeration& enumeration() const {
    if (!enumeration_) throw std::logic_error("not an OTW metric");
    return *enumeration_;
  }
  std::shared_ptr<const Enumeration> shared_enumeration() const { return enumeration_; }
  const RateSequence& rate_sequence() const {
    if (!rate_) throw std::logic_error("not a prefix ultrametric");
    return *rate_;
  }

  std::string name() const { return is_otw() ? "otw:" + enumeration_->name() : "rate:" + rate_->name(); }

  UltraDistance distance(const Point& x, const Point& y) const {
    return is_otw() ? otw_distance(*enumeration_, x, y) : prefix_ultrametric_distance(*rate_, x, y);
  }

  /// The exact rank when it is at most `cap`, nullopt otherwise (including
  /// equal points). For non-prefix-closed listings this only reads q_1..q_cap,
  /// so it stays decidable when the exact rank is out of reach.
  std::optional<Index> rank_within(const Point& x, const Point& y, const Index& cap) const {
    if (!is_otw()) {
      const auto n = first_diff_index(x, y);
      if (n && Index(*n) <= cap) return Index(*n);
      return std::nullopt;
    }
    const auto common = common_prefix_length(x, y);
    if (!common) return std::nullopt;
    if (enumeration_->prefix_closed_by_construction()) {
      Index b = enumeration_->first_index_among(detail::shortest_distinguishing_words(x, y, *common));
      if (b <= cap) return b;
      return std::nullopt;
    }
    for (Index j = 1; j <= cap; ++j) {
      const Word w = enumeration_->word_at(j);
      if (w.size() <= *common) continue;  // shared prefix tests cannot differ
      if (detail::distinguishes(w, x, y)) return j;
    }
    return std::nullopt;
  }

  /// Least rank whose distance value is strictly below (or at most) `bound`.
  Index rank_threshold(const Rational& bound, bool inclusive = false) const {
    if (bound <= 0) throw std::invalid_argument("distance bounds must be positive");
    if (!is_otw()) return Index(rate_->first_below(bound, inclusive));
    std::uint64_t r = 1;
    for (;; ++r) {
      const Rational v = pow2_neg(r);
      if (v < bound || (inclusive && v == bound)) return Index(r);
    }
  }

  bool value_below(const Rank& r, const Rational& bound) const {
    return r.is_infinite() || r.value() >= rank_threshold(bound, false);
  }
  bool value_at_most(const Rank& r, const Rational& bound) const {
    return r.is_infinite() || r.value() >= rank_threshold(bound, true);
  }

  /// d(x, y) < delta, decided with bounded work.
  bool closer_than(const Point& x, const Point& y, const Rational& delta) const {
    const Index needed = rank_threshold(delta, false);
    if (needed == 0) return true;
    return !rank_within(x, y, needed - 1).has_value();
  }

  std::string value_string(const Rank& r) const {
    if (r.is_infinite()) return "0";
    if (is_otw()) return detail::otw_value(r);
    return to_string((*rate_)(static_cast<std::uint64_t>(r.value())));
  }

  /// Exact value, when representable.
  std::optional<Rational> value(const Rank& r) const {
    if (r.is_infinite()) return Rational(0);
    if (is_otw()) {
      if (r.value() > 4096) return std::nullopt;
      return pow2_neg(static_cast<std::uint64_t>(r.value()));
    }
    return (*rate_)(static_cast<std::uint64_t>(r.value()));
  }

  /// Prefix length D such that infinite points sharing their first D
  /// letters are at distance < delta.
  std::size_t agreement_depth(const Rational& delta) const {
    const Index needed = rank_threshold(delta, false);
    if (!is_otw()) return static_cast<std::size_t>(needed);
    std::size_t depth = 0;
    for (Index j = 1; j < needed; ++j) depth = std::max(depth, enumeration_->word_at(j).size());
    return depth;
  }

 private:
  Metric() = default;

  std::shared_ptr<const Enumeration> enumeration_;
  std::optional<RateSequence> rate_;
};

// ---------------------------------------------------------------------------
// Empirical modulus of continuity between two metrics.

struct ModulusRow {
  Index rank;             // rank under the source metric
  std::uint64_t pairs = 0;
  Rank min_target_rank;   // smallest rank under the target metric at this level
  Index max_deficit;      // max (source rank - target rank) over finite target ranks
};

struct ModulusTable {
  std::string source;
  std::string target;
  std::uint64_t equal_pairs = 0;
  std::vector<ModulusRow> rows;
};

inline ModulusTable modulus_table(const Metric& source, const Metric& target,
                                  std::span<const std::pair<Point, Point>> samples) {
  ModulusTable table{.source = source.name(), .target = target.name()};
  std::map<Index, ModulusRow> rows;
  for (const auto& [x, y] : samples) {
    const Rank rs = source.distance(x, y).rank;
    const Rank rt = target.distance(x, y).rank;
    if (rs.is_infinite() || rt.is_infinite()) {
      if (rs.is_infinite() != rt.is_infinite()) throw std::logic_error("metrics disagree on equality");
      ++table.equal_pairs;
      continue;
    }
    auto [it, inserted] = rows.try_emplace(rs.value(), ModulusRow{rs.value(), 0, rt, rs.value() - rt.value()});
    ModulusRow& row = it->second;
    ++row.pairs;
    row.min_target_rank = min(row.min_target_rank, rt);
    row.max_deficit = std::max<Index>(row.max_deficit, rs.value() - rt.value());
  }
  for (auto& [rank, row] : rows) table.rows.push_back(std::move(row));
  return table;
}

}  // namespace shadowlab
