#include "shadowlab/generator.hpp"
#include "shadowlab/metric.hpp"
#include "shadowlab/bad_enumeration.hpp"
#include "shadowlab/report.hpp"

#include <gtest/gtest.h>

using namespace shadowlab;

namespace {

std::shared_ptr<const Enumeration> block_enum() {
  static auto e = std::make_shared<const BlockEnumeration>();
  return e;
}
std::shared_ptr<const Enumeration> bad_enum() {
  static auto e = std::make_shared<const BadEnumeration>();
  return e;
}

Point P(const char* s) { return parse_point(s); }

}  // namespace

TEST(OtwDistance, Examples) {
  const Point x = P("1.2(3)");
  EXPECT_TRUE(otw_distance(*block_enum(), x, x).rank.is_infinite());
  EXPECT_EQ(otw_distance(*block_enum(), x, x).value, "0");
  const UltraDistance d = otw_distance(*block_enum(), P("(1)"), P("(2)"));
  EXPECT_EQ(d.rank, Rank(2));
  EXPECT_EQ(d.value, "2^-2");
  EXPECT_EQ(d.model_name, "otw:block");
  EXPECT_EQ(otw_distance(*bad_enum(), P("2.3(4)"), P("4.1.2.3(4)")).rank, Rank(6));
}

TEST(OtwDistance, FiniteWords) {
  // e and 1: q_2 = 1 is a prefix of exactly one.
  EXPECT_EQ(otw_distance(*block_enum(), P("e"), P("1")).rank, Rank(2));
  // 1 and 1.1: first separated by q_4 = 1.1.
  EXPECT_EQ(otw_distance(*block_enum(), P("1"), P("1.1")).rank, Rank(4));
  EXPECT_EQ(otw_distance(*block_enum(), P("1.1"), P("1(1)")).rank, Rank(block_enum()->index_of(Word{1, 1, 1})));
}

TEST(OtwOracle, Examples) {
  EXPECT_EQ(otw_distance_oracle(*block_enum(), P("(1)"), P("(2)"), 1), std::nullopt);
  EXPECT_EQ(otw_distance_oracle(*block_enum(), P("(1)"), P("(2)"), 10), Index(2));
  EXPECT_EQ(otw_distance_oracle(*block_enum(), P("(1)"), P("(1)"), 1000), std::nullopt);
  EXPECT_THROW(otw_distance_oracle(*block_enum(), P("(1)"), P("(1)"), 0), std::invalid_argument);
}

TEST(OtwOracle, AgreesWithFastPathOnRandomPairs) {
  Rng rng = make_rng(11, 0);
  const PointSampler sampler{.max_letter = 3, .max_common = 4, .finite_percent = 15};
  for (const auto& e : {block_enum(), bad_enum()}) {
    for (int t = 0; t < 300; ++t) {
      const auto pts = sampler.related(rng, 2);
      const Rank fast = otw_rank(*e, pts[0], pts[1]);
      const auto slow = otw_distance_oracle(*e, pts[0], pts[1], fast.is_infinite() ? Index(200) : fast.value());
      if (fast.is_infinite()) {
        EXPECT_FALSE(slow.has_value());
      } else {
        ASSERT_TRUE(slow.has_value()) << format_point(pts[0]) << " " << format_point(pts[1]);
        EXPECT_EQ(*slow, fast.value());
      }
    }
  }
}

TEST(PrefixUltrametric, Examples) {
  const RateSequence dyadic = RateSequence::dyadic();
  const UltraDistance d = prefix_ultrametric_distance(dyadic, P("1.2.3(9)"), P("1.2.4(9)"));
  EXPECT_EQ(d.rank, Rank(2));
  EXPECT_EQ(d.value, "1/4");
  EXPECT_EQ(prefix_ultrametric_distance(dyadic, P("(1)"), P("(1)")).value, "0");
  const RateSequence harmonic = RateSequence::harmonic();
  EXPECT_EQ(prefix_ultrametric_distance(harmonic, P("1.1.1(2)"), P("(1)")).value, "1/4");
  EXPECT_THROW(prefix_ultrametric_distance(dyadic, P("1"), P("(1)")), std::invalid_argument);
}

TEST(UltraDistance, CrossModelComparisonIsRejected) {
  const Metric block = Metric::otw(block_enum());
  const Metric prod = Metric::rate(RateSequence::dyadic());
  const auto a = block.distance(P("(1)"), P("(2)"));
  const auto b = prod.distance(P("(1)"), P("(2)"));
  EXPECT_THROW((void)closer(a, b), std::logic_error);
  EXPECT_TRUE(closer(block.distance(P("1(1)"), P("1(2)")), a));
}

TEST(Serialization, DistanceSchema) {
  const Metric prod = Metric::rate(RateSequence::dyadic());
  EXPECT_EQ(to_json(prod.distance(P("1.2(9)"), P("1.3(9)"))).dump(),
            R"({"model":"rate:dyadic","rank":"1","value":"1/2"})");
  EXPECT_EQ(to_json(prod.distance(P("(1)"), P("(1)"))).dump(), R"({"model":"rate:dyadic","rank":"inf","value":"0"})");
}

TEST(Metric, RankThresholds) {
  const Metric block = Metric::otw(block_enum());
  EXPECT_EQ(block.rank_threshold(Rational(1, 4)), 3);
  EXPECT_EQ(block.rank_threshold(Rational(1, 4), true), 2);
  EXPECT_EQ(block.rank_threshold(Rational(1, 3)), 2);
  const Metric harmonic = Metric::rate(RateSequence::harmonic());
  EXPECT_EQ(harmonic.rank_threshold(Rational(1, 4)), 4);
  EXPECT_EQ(harmonic.rank_threshold(Rational(1, 4), true), 3);
  EXPECT_TRUE(block.value_below(Rank::infinity(), Rational(1, 1000)));
  EXPECT_FALSE(block.value_below(Rank(2), Rational(1, 4)));
  EXPECT_TRUE(block.value_at_most(Rank(2), Rational(1, 4)));
  EXPECT_THROW(block.rank_threshold(0), std::invalid_argument);
}

TEST(Metric, RankWithinAndCloserThanAgreeWithExactRank) {
  Rng rng = make_rng(12, 0);
  const PointSampler sampler{.max_letter = 3, .max_common = 4};
  for (const Metric& m : {Metric::otw(block_enum()), Metric::otw(bad_enum()), Metric::rate(RateSequence::dyadic())}) {
    for (int t = 0; t < 300; ++t) {
      const auto pts = sampler.related(rng, 2);
      const Rank exact = m.distance(pts[0], pts[1]).rank;
      for (std::uint64_t cap = 1; cap <= 12; ++cap) {
        const auto within = m.rank_within(pts[0], pts[1], cap);
        if (!exact.is_infinite() && exact.value() <= cap) {
          EXPECT_EQ(within, exact.value());
        } else {
          EXPECT_FALSE(within.has_value());
        }
      }
      for (std::uint64_t k = 0; k <= 10; ++k) {
        EXPECT_EQ(m.closer_than(pts[0], pts[1], pow2_neg(k)), m.value_below(exact, pow2_neg(k))) << m.name();
      }
    }
  }
}

TEST(Metric, AgreementDepthForcesSmallDistance) {
  Rng rng = make_rng(13, 0);
  for (const Metric& m : {Metric::otw(block_enum()), Metric::otw(bad_enum()), Metric::rate(RateSequence::harmonic())}) {
    for (std::uint64_t k = 1; k <= 8; ++k) {
      const Rational delta = pow2_neg(k);
      const std::size_t depth = m.agreement_depth(delta);
      for (int t = 0; t < 50; ++t) {
        const Point x = random_point(rng, 3);
        Word prefix = x.take(depth);
        const Point tail = random_point(rng, 3);
        prefix.insert(prefix.end(), tail.head().begin(), tail.head().end());
        const Point y = Point::infinite(prefix, tail.period());
        EXPECT_TRUE(m.closer_than(x, y, delta)) << m.name() << " depth " << depth;
      }
    }
  }
}

TEST(Metric, ExactValues) {
  const Metric block = Metric::otw(block_enum());
  EXPECT_EQ(block.value(Rank(3)), Rational(1, 8));
  EXPECT_EQ(block.value(Rank::infinity()), Rational(0));
  EXPECT_EQ(block.value_string(Rank(5)), "2^-5");
  const Metric h = Metric::rate(RateSequence::scaled(RateSequence::harmonic(), Rational(3, 2)));
  EXPECT_EQ(h.name(), "rate:harmonic*3/2");
  EXPECT_EQ(h.value(Rank(2)), Rational(1, 2));
}

// ---------------------------------------------------------------------------
// Axioms on sampled triples.

TEST(UltrametricAxioms, SampledTriples) {
  Rng rng = make_rng(14, 0);
  const PointSampler otw_sampler{.max_letter = 3, .max_common = 4, .finite_percent = 15};
  const PointSampler prod_sampler{.max_letter = 3, .max_common = 6};
  const Metric metrics[] = {Metric::rate(RateSequence::dyadic()), Metric::otw(block_enum()), Metric::otw(bad_enum())};
  for (const Metric& m : metrics) {
    for (int t = 0; t < 500; ++t) {
      const auto pts = (m.is_otw() ? otw_sampler : prod_sampler).related(rng, 3);
      const Rank xy = m.distance(pts[0], pts[1]).rank;
      const Rank yx = m.distance(pts[1], pts[0]).rank;
      const Rank xz = m.distance(pts[0], pts[2]).rank;
      const Rank zy = m.distance(pts[2], pts[1]).rank;
      EXPECT_EQ(xy, yx);
      EXPECT_GE(xy, min(xz, zy));
      EXPECT_EQ(xy.is_infinite(), pts[0] == pts[1]);
    }
  }
}

TEST(UltrametricAxioms, IndicatorAgreementBelowTheMinimum) {
  // For j below min(k(x,z), k(z,y)), the prefix indicators of x, z and y
  // all agree on p_j; so x and y cannot be separated before that minimum.
  Rng rng = make_rng(15, 0);
  const PointSampler sampler{.max_letter = 3, .max_common = 4, .finite_percent = 15};
  const BlockEnumeration& p = dynamic_cast<const BlockEnumeration&>(*block_enum());
  for (int t = 0; t < 300; ++t) {
    const auto pts = sampler.related(rng, 3);
    const Rank r = min(otw_rank(p, pts[0], pts[2]), otw_rank(p, pts[2], pts[1]));
    const Index limit = r.is_infinite() ? Index(400) : r.value();
    for (Index j = 1; j < limit; ++j) {
      const Word w = p.word_at(j);
      const bool cx = is_prefix(w, pts[0]), cy = is_prefix(w, pts[1]), cz = is_prefix(w, pts[2]);
      ASSERT_TRUE(cx == cz && cz == cy);
    }
    EXPECT_GE(otw_rank(p, pts[0], pts[1]), r);
  }
}

// ---------------------------------------------------------------------------

TEST(RateSequence, Basics) {
  const RateSequence d = RateSequence::dyadic();
  EXPECT_EQ(d(0), 1);
  EXPECT_EQ(d(3), Rational(1, 8));
  EXPECT_EQ(d.first_below(Rational(1, 8)), 4U);
  EXPECT_EQ(d.first_below(Rational(1, 8), true), 3U);
  for (std::uint64_t n = 0; n < 200; ++n) EXPECT_LT(d(n + 1), d(n));
  const RateSequence t = RateSequence::table("t", {1, Rational(1, 2)});
  EXPECT_THROW(t(2), ResourceLimitError);
  EXPECT_THROW(t.first_below(Rational(1, 4)), ResourceLimitError);
  EXPECT_THROW(RateSequence::scaled(d, 0), std::invalid_argument);
}

TEST(Regularity, OrderOneHoldsWithConstantOne) {
  for (const RateSequence& r : {RateSequence::dyadic(), RateSequence::harmonic()}) {
    const RegularityProfile p = regularity_check(r, 1, 64);
    EXPECT_TRUE(p.monotone);
    EXPECT_TRUE(p.holds) << r.name();
    EXPECT_EQ(p.smallest_constant, 1);
  }
}

TEST(Regularity, HigherOrderNeedsLargerConstant) {
  // alpha_n <= r_n and eta_{n+p} >= r_{n+p-1}; the ratio r_n / r_{n+p-1}
  // is 2^{p-1} for the dyadic rate and (n+p)/(n+1) <= p for the harmonic one.
  for (std::uint64_t p = 2; p <= 3; ++p) {
    const RegularityProfile d = regularity_check(RateSequence::dyadic(), p, 64);
    EXPECT_FALSE(d.holds);
    EXPECT_EQ(d.first_violation, 0U);
    EXPECT_EQ(d.smallest_constant, Rational(pow_index(2, p - 1)));
    EXPECT_TRUE(regularity_check(RateSequence::dyadic(), p, 64, d.smallest_constant).holds);

    const RegularityProfile h = regularity_check(RateSequence::harmonic(), p, 64);
    EXPECT_FALSE(h.holds);
    EXPECT_EQ(h.smallest_constant, Rational(p));
  }
}

TEST(Regularity, NonMonotoneTable) {
  const RateSequence r = RateSequence::table("bumpy", {1, Rational(1, 2), Rational(3, 4), Rational(1, 8), Rational(1, 16)});
  const RegularityProfile p = regularity_check(r, 1, 2);
  EXPECT_FALSE(p.monotone);
  EXPECT_EQ(p.first_ascent, 1U);
  EXPECT_FALSE(p.holds);
}

TEST(Regularity, SampledPairsRespectTheBounds) {
  // (x, y) in U_n gives d <= r_n; d < r_{n-1} gives (x, y) in U_n.
  Rng rng = make_rng(16, 0);
  const RateSequence r = RateSequence::harmonic();
  const PointSampler sampler{.max_letter = 2, .max_common = 8};
  for (int t = 0; t < 2000; ++t) {
    const auto pts = sampler.related(rng, 2);
    const auto N = first_diff_index(pts[0], pts[1]);
    if (!N) continue;
    const Rational d = r(*N);
    for (std::uint64_t n = 0; n <= 10; ++n) {
      const bool in_U = *N >= n;
      if (in_U) EXPECT_LE(d, r(n));
      if (n >= 1 && d < r(n - 1)) EXPECT_TRUE(in_U);
    }
  }
}

TEST(ModulusTable, IdenticalMetricsHaveZeroDeficit) {
  Rng rng = make_rng(17, 0);
  const Metric block = Metric::otw(block_enum());
  const PointSampler sampler{.max_letter = 3, .max_common = 4, .finite_percent = 10};
  std::vector<std::pair<Point, Point>> samples;
  for (int t = 0; t < 200; ++t) {
    auto pts = sampler.related(rng, 2);
    samples.emplace_back(pts[0], pts[1]);
  }
  samples.emplace_back(P("(1)"), P("(1)"));
  const ModulusTable table = modulus_table(block, block, samples);
  EXPECT_GE(table.equal_pairs, 1U);
  for (const ModulusRow& row : table.rows) {
    EXPECT_EQ(row.max_deficit, 0);
    EXPECT_EQ(row.min_target_rank, Rank(row.rank));
  }
}
