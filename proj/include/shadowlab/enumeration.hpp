#pragma once

// Bijective listings k -> q_k of all finite words, and the block listing
// that is closed under taking prefixes and under the shift.

#include "shadowlab/numeric.hpp"
#include "shadowlab/word.hpp"

#include <algorithm>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container_hash/hash.hpp>

namespace shadowlab {

struct WordHash {
  std::size_t operator()(const Word& w) const { return boost::hash_range(w.begin(), w.end()); }
};

/// A listing of all finite words, indexed from 1.
///
/// Implementations may memoize; memoized state is guarded internally and is
/// append-only, so concurrent readers are safe.
class Enumeration {
 public:
  virtual ~Enumeration() = default;

  virtual std::string name() const = 0;

  /// Word at 1-based index k. Throws std::invalid_argument for k = 0 and
  /// ResourceLimitError when k lies beyond what can be materialized.
  virtual Word word_at(const Index& k) const = 0;

  /// Inverse of word_at. Throws ResourceLimitError when the word cannot be
  /// located within the implementation's ceiling.
  virtual Index index_of(std::span<const Letter> w) const = 0;

  /// Least index among the given words.
  virtual Index first_index_among(std::span<const Word> words) const {
    if (words.empty()) throw std::invalid_argument("first_index_among needs at least one word");
    Index best = index_of(words.front());
    for (const Word& w : words.subspan(1)) best = std::min(best, index_of(w));
    return best;
  }

  /// True when every proper prefix of q_k is listed before q_k by
  /// construction (not merely on a validated prefix).
  virtual bool prefix_closed_by_construction() const { return false; }

 protected:
  static void require_positive(const Index& k) {
    if (k < 1) throw std::invalid_argument("enumeration indices start at 1");
  }
};

/// An explicit finite listing, for tests and small hand-made examples.
class TableEnumeration final : public Enumeration {
 public:
  TableEnumeration(std::string name, std::vector<Word> words) : name_(std::move(name)), words_(std::move(words)) {
    for (std::size_t i = 0; i < words_.size(); ++i) index_.try_emplace(words_[i], i + 1);
  }

  std::string name() const override { return name_; }
  std::size_t size() const { return words_.size(); }

  Word word_at(const Index& k) const override {
    require_positive(k);
    if (k > words_.size()) throw ResourceLimitError(name_ + ": index " + k.str() + " beyond table");
    return words_[static_cast<std::size_t>(k) - 1];
  }

  Index index_of(std::span<const Letter> w) const override {
    auto it = index_.find(Word(w.begin(), w.end()));
    if (it == index_.end()) throw ResourceLimitError(name_ + ": word " + format_word(w) + " not in table");
    return it->second;
  }

 private:
  std::string name_;
  std::vector<Word> words_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
};

// ---------------------------------------------------------------------------
// Block listing. B_N holds the words of length <= N over letters {1..N};
// the listing is B_1, then B_2 \ B_1, then B_3 \ B_2, ... and inside each
// block words are ordered by length, then lexicographically.

namespace block {

/// |B_N|, with |B_0| = 0.
inline Index cumulative_size(std::uint64_t n) {
  if (n == 0) return 0;
  Index total = 0;
  Index power = 1;
  for (std::uint64_t l = 0; l <= n; ++l) {
    total += power;
    power *= n;
  }
  return total;
}

/// Number of words of length l in B_N \ B_{N-1}.
inline Index new_words(std::uint64_t n, std::uint64_t l) {
  if (n == 1) return l <= 1 ? 1 : 0;
  if (l == 0 || l > n) return 0;
  if (l == n) return pow_index(n, l);
  return pow_index(n, l) - pow_index(n - 1, l);
}

/// The block a word first belongs to.
inline std::uint64_t block_of(std::span<const Letter> w) {
  std::uint64_t n = std::max<std::uint64_t>(1, w.size());
  for (Letter c : w) n = std::max<std::uint64_t>(n, c);
  return n;
}

/// Completions of length rem counted inside block n, given whether the
/// prefix so far already contains the letter n.
inline Index completions(std::uint64_t n, std::uint64_t length, std::uint64_t rem, bool has_top) {
  if (n == 1 || length == n || has_top) return pow_index(n, rem);
  return pow_index(n, rem) - pow_index(n - 1, rem);
}

/// Sequential walk over the block listing without big-integer arithmetic.
class Cursor {
 public:
  /// Returns q_1, q_2, ... on successive calls.
  const Word& next() {
    if (!started_) {
      started_ = true;
      return word_;
    }
    do advance();
    while (!valid());
    return word_;
  }

 private:
  void advance() {
    if (n_ == 1) {
      if (word_.empty()) {
        word_ = {1};
        return;
      }
      n_ = 2;
      word_ = {1};
      return;
    }
    for (std::size_t i = word_.size(); i-- > 0;) {
      if (word_[i] < n_) {
        ++word_[i];
        std::fill(word_.begin() + static_cast<std::ptrdiff_t>(i) + 1, word_.end(), 1);
        return;
      }
    }
    std::size_t len = word_.size() + 1;
    if (len > n_) {
      ++n_;
      len = 1;
    }
    word_.assign(len, 1);
  }

  bool valid() const {
    if (n_ == 1 || word_.size() == n_) return true;
    return std::find(word_.begin(), word_.end(), n_) != word_.end();
  }

  bool started_ = false;
  Letter n_ = 1;
  Word word_;
};

}  // namespace block

/// Prefix- and shift-closed listing built block by block.
class BlockEnumeration final : public Enumeration {
 public:
  /// Words of the first `cached_blocks` blocks are kept in memory for fast
  /// sequential access; everything else is ranked in closed form.
  explicit BlockEnumeration(std::uint64_t cached_blocks = 5)
      : cached_limit_(static_cast<std::size_t>(block::cumulative_size(cached_blocks))) {}

  std::string name() const override { return "block"; }
  bool prefix_closed_by_construction() const override { return true; }

  Word word_at(const Index& k) const override {
    require_positive(k);
    if (k <= cached_limit_) {
      std::lock_guard lock(mutex_);
      const auto pos = static_cast<std::size_t>(k);
      while (cache_.size() < pos) cache_.push_back(cursor_.next());
      return cache_[pos - 1];
    }
    return unrank(k);
  }

  Index index_of(std::span<const Letter> w) const override {
    for (Letter c : w) {
      if (c == 0) throw std::invalid_argument("letter 0 is not a letter");
    }
    const std::uint64_t n = block::block_of(w);
    const std::uint64_t len = w.size();
    Index idx = block::cumulative_size(n - 1);
    for (std::uint64_t l = 0; l < len; ++l) idx += block::new_words(n, l);
    bool has_top = false;
    for (std::uint64_t i = 0; i < len; ++i) {
      const std::uint64_t rem = len - i - 1;
      idx += Index(w[i] - 1) * block::completions(n, len, rem, has_top);
      has_top = has_top || w[i] == n;
    }
    return idx + 1;
  }

 private:
  static Word unrank(const Index& k) {
    std::uint64_t n = 1;
    while (block::cumulative_size(n) < k) ++n;
    Index r = k - block::cumulative_size(n - 1) - 1;
    std::uint64_t len = 0;
    for (;; ++len) {
      Index count = block::new_words(n, len);
      if (r < count) break;
      r -= count;
    }
    Word w;
    w.reserve(len);
    bool has_top = false;
    for (std::uint64_t i = 0; i < len; ++i) {
      const std::uint64_t rem = len - i - 1;
      for (std::uint64_t c = 1; c <= n; ++c) {
        Index count = block::completions(n, len, rem, has_top || c == n);
        if (r < count) {
          w.push_back(static_cast<Letter>(c));
          has_top = has_top || c == n;
          break;
        }
        r -= count;
      }
    }
    return w;
  }

  std::size_t cached_limit_;
  mutable std::mutex mutex_;
  mutable block::Cursor cursor_;
  mutable std::vector<Word> cache_;
};

}  // namespace shadowlab
