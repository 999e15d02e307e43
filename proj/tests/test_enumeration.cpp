#include "shadowlab/enumeration.hpp"
#include "shadowlab/generator.hpp"
#include "shadowlab/validation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace shadowlab;

namespace {

// Brute-force block listing: materialize B_N as a set, subtract B_{N-1},
// sort by (length, lex), append.
std::vector<Word> brute_block_listing(std::uint64_t max_block) {
  std::vector<Word> out;
  std::set<Word> previous;
  for (std::uint64_t n = 1; n <= max_block; ++n) {
    std::set<Word> current{Word{}};
    std::vector<Word> frontier{Word{}};
    for (std::uint64_t len = 1; len <= n; ++len) {
      std::vector<Word> next;
      for (const Word& w : frontier) {
        for (Letter c = 1; c <= n; ++c) {
          Word v = w;
          v.push_back(c);
          current.insert(v);
          next.push_back(std::move(v));
        }
      }
      frontier = std::move(next);
    }
    std::vector<Word> fresh;
    for (const Word& w : current) {
      if (!previous.contains(w)) fresh.push_back(w);
    }
    std::sort(fresh.begin(), fresh.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    out.insert(out.end(), fresh.begin(), fresh.end());
    previous = std::move(current);
  }
  return out;
}

const std::vector<Word>& oracle() {
  static const std::vector<Word> listing = brute_block_listing(6);
  return listing;
}

}  // namespace

TEST(BlockEnumeration, FirstWords) {
  const BlockEnumeration p;
  EXPECT_EQ(p.word_at(1), Word{});
  const std::vector<Word> expected = {{1}, {2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
  for (std::size_t k = 2; k <= 7; ++k) EXPECT_EQ(p.word_at(k), expected[k - 2]);
  EXPECT_EQ(p.index_of(Word{1}), 2);
  EXPECT_EQ(p.index_of(Word{2, 1}), 6);
  EXPECT_THROW(p.word_at(0), std::invalid_argument);
}

TEST(BlockEnumeration, BlockSizes) {
  EXPECT_EQ(block::cumulative_size(1), 2);
  EXPECT_EQ(block::cumulative_size(2), 7);
  EXPECT_EQ(block::cumulative_size(3), 40);
  for (std::uint64_t n = 1; n <= 6; ++n) {
    Index sum = block::cumulative_size(n - 1);
    for (std::uint64_t l = 0; l <= n; ++l) sum += block::new_words(n, l);
    EXPECT_EQ(sum, block::cumulative_size(n)) << n;
  }
  EXPECT_EQ(oracle().size(), static_cast<std::size_t>(block::cumulative_size(6)));
}

TEST(BlockEnumeration, MatchesBruteForceThroughCache) {
  const BlockEnumeration p(6);
  for (std::size_t k = 1; k <= oracle().size(); ++k) ASSERT_EQ(p.word_at(k), oracle()[k - 1]) << k;
}

TEST(BlockEnumeration, ClosedFormMatchesBruteForce) {
  const BlockEnumeration p(0);  // no cache: every lookup is ranked in closed form
  for (std::size_t k = 1; k <= oracle().size(); ++k) {
    ASSERT_EQ(p.word_at(k), oracle()[k - 1]) << k;
    ASSERT_EQ(p.index_of(oracle()[k - 1]), k) << format_word(oracle()[k - 1]);
  }
}

TEST(BlockEnumeration, CursorMatchesBruteForce) {
  block::Cursor cursor;
  for (const Word& w : oracle()) ASSERT_EQ(cursor.next(), w);
}

TEST(BlockEnumeration, LargeLettersRoundTrip) {
  const BlockEnumeration p;
  Rng rng = make_rng(5, 5);
  for (int t = 0; t < 500; ++t) {
    const Word w = random_word(rng, uniform(rng, 0, 8), 32);
    const Index k = p.index_of(w);
    EXPECT_EQ(p.word_at(k), w);
    EXPECT_GT(k, block::cumulative_size(block::block_of(w) - 1));
    EXPECT_LE(k, block::cumulative_size(block::block_of(w)));
  }
  // The one-letter word 32 opens block 32.
  EXPECT_EQ(p.index_of(Word{32}), block::cumulative_size(31) + 1);
}

TEST(BlockEnumeration, RoundTripFirstTenThousand) {
  const BlockEnumeration p;
  for (std::uint64_t k = 1; k <= 10000; ++k) ASSERT_EQ(p.index_of(p.word_at(k)), k);
  block::Cursor cursor;
  for (int j = 0; j < 10000; ++j) {
    const Word& w = cursor.next();
    ASSERT_EQ(p.word_at(p.index_of(w)), w);
  }
}

TEST(ValidatePscomp, BlockHasNoViolations) {
  const BlockEnumeration p;
  const ValidationReport r = validate_pscomp(p, 10000);
  EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations.front().detail);
  EXPECT_EQ(r.entries_checked, 10000U);
}

TEST(ValidatePscomp, FlagsBrokenTables) {
  const TableEnumeration starts_wrong("t1", {{1}});
  const ValidationReport r1 = validate_pscomp(starts_wrong, 1);
  ASSERT_FALSE(r1.ok());
  EXPECT_EQ(r1.violations.front().kind, "first-not-empty");

  const TableEnumeration not_prefix_closed("t2", {{}, {1, 2}, {1}, {2}});
  const ValidationReport r2 = validate_pscomp(not_prefix_closed, 4);
  ASSERT_FALSE(r2.ok());
  EXPECT_EQ(r2.violations.front().kind, "prefix-closure");
  EXPECT_EQ(r2.violations.front().index, 2U);

  const TableEnumeration not_shift_closed("t3", {{}, {1}, {1, 2}, {2}});
  const ValidationReport r3 = validate_pscomp(not_shift_closed, 4);
  ASSERT_FALSE(r3.ok());
  EXPECT_EQ(r3.violations.front().kind, "shift-closure");

  const TableEnumeration duplicated("t4", {{}, {1}, {1}});
  const ValidationReport r4 = validate_pscomp(duplicated, 3);
  ASSERT_FALSE(r4.ok());
  EXPECT_EQ(r4.violations.front().kind, "duplicate");

  EXPECT_THROW(validate_pscomp(duplicated, 0), std::invalid_argument);
}

TEST(TableEnumeration, Lookup) {
  const TableEnumeration t("t", {{}, {3}, {3, 1}});
  EXPECT_EQ(t.word_at(2), Word{3});
  EXPECT_EQ(t.index_of(Word{3, 1}), 3);
  EXPECT_THROW(t.word_at(4), ResourceLimitError);
  EXPECT_THROW(t.index_of(Word{9}), ResourceLimitError);
}
