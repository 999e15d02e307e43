#pragma once

// Staged listing that hides a three-letter word a1.a2.a3 at index i_n - n
// while no word up to i_n starts with a2 and no word up to i_n contains b.
// Its OTW metric admits pseudo-orbits that cannot be Lipschitz-shadowed.

#include "shadowlab/enumeration.hpp"

#include <cstdlib>
#include <string>
#include <unordered_map>
#include <vector>

namespace shadowlab {

struct BadStage {
  std::uint64_t n = 0;
  std::uint64_t cutoff = 0;  // i_n
  Letter a1 = 0, a2 = 0, a3 = 0, b = 0;

  std::uint64_t special_index() const { return cutoff - n; }
  Word special_word() const { return {a1, a2, a3}; }
};

/// i_1 = 4 and i_n = i_{n-1} + n + 1, i.e. the least cutoff with
/// i_n - n > i_{n-1}.
inline std::uint64_t bad_cutoff(std::uint64_t n) { return n * (n + 1) / 2 + n + 2; }

inline constexpr std::uint64_t kDefaultStageCeiling = 1000;

/// SHADOWLAB_STAGE_CEILING overrides the default stage ceiling.
inline std::uint64_t stage_ceiling_from_env() {
  if (const char* env = std::getenv("SHADOWLAB_STAGE_CEILING")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultStageCeiling;
}

class BadEnumeration final : public Enumeration {
 public:
  explicit BadEnumeration(std::uint64_t stage_ceiling = stage_ceiling_from_env()) : ceiling_(stage_ceiling) {}

  std::string name() const override { return "bad"; }
  std::uint64_t stage_ceiling() const { return ceiling_; }

  Word word_at(const Index& k) const override {
    require_positive(k);
    std::lock_guard lock(mutex_);
    if (k > bad_cutoff(ceiling_)) {
      throw ResourceLimitError("bad enumeration: index " + k.str() + " beyond stage ceiling " +
                               std::to_string(ceiling_));
    }
    const auto pos = static_cast<std::uint64_t>(k);
    while (words_.size() < pos) build_stage();
    return words_[pos - 1];
  }

  Index index_of(std::span<const Letter> w) const override {
    const Word key(w.begin(), w.end());
    return first_index_among(std::span<const Word>(&key, 1));
  }

  /// Materializes stages only until one of the words shows up.
  Index first_index_among(std::span<const Word> words) const override {
    if (words.empty()) throw std::invalid_argument("first_index_among needs at least one word");
    std::lock_guard lock(mutex_);
    for (;;) {
      std::optional<std::uint64_t> best;
      for (const Word& w : words) {
        if (auto it = index_.find(w); it != index_.end()) {
          if (!best || it->second < *best) best = it->second;
        }
      }
      if (best) return *best;
      if (stages_.size() >= ceiling_) {
        throw ResourceLimitError("bad enumeration: " + format_word(words.front()) + " not listed within " +
                                 std::to_string(ceiling_) + " stages (raise SHADOWLAB_STAGE_CEILING)");
      }
      build_stage();
    }
  }

  /// Stage n (1-based), materializing as needed.
  BadStage stage(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("stages are numbered from 1");
    std::lock_guard lock(mutex_);
    if (n > ceiling_) {
      throw ResourceLimitError("bad enumeration: stage " + std::to_string(n) + " beyond ceiling " +
                               std::to_string(ceiling_));
    }
    while (stages_.size() < n) build_stage();
    return stages_[n - 1];
  }

  std::uint64_t materialized_stages() const {
    std::lock_guard lock(mutex_);
    return stages_.size();
  }

 private:
  bool letter_used(Letter c) const { return c < letters_seen_.size() && letters_seen_[c]; }

  void mark_letters(const Word& w) const {
    for (Letter c : w) {
      if (c >= letters_seen_.size()) letters_seen_.resize(static_cast<std::size_t>(c) * 2 + 8, false);
      letters_seen_[c] = true;
    }
  }

  static bool eligible(const Word& w, const BadStage& s) {
    if (!w.empty() && w.front() == s.a2) return false;
    return std::find(w.begin(), w.end(), s.b) == w.end();
  }

  /// Earliest base-listing word that is unused and eligible at stage s.
  Word next_filler(const BadStage& s) const {
    for (auto it = pending_.begin(); it != pending_.end();) {
      if (index_.contains(*it)) {
        it = pending_.erase(it);
      } else if (eligible(*it, s)) {
        Word w = std::move(*it);
        pending_.erase(it);
        return w;
      } else {
        ++it;
      }
    }
    for (;;) {
      const Word& w = base_.next();
      if (index_.contains(w)) continue;
      if (eligible(w, s)) return w;
      pending_.push_back(w);
    }
  }

  void assign(Word w) const {
    mark_letters(w);
    index_.emplace(w, words_.size() + 1);
    words_.push_back(std::move(w));
  }

  void build_stage() const {
    BadStage s;
    s.n = stages_.size() + 1;
    s.cutoff = bad_cutoff(s.n);
    Letter fresh[4];
    Letter c = 1;
    for (Letter& slot : fresh) {
      while (letter_used(c)) ++c;
      slot = c++;
    }
    s.a1 = fresh[0];
    s.a2 = fresh[1];
    s.a3 = fresh[2];
    s.b = fresh[3];
    for (std::uint64_t k = words_.size() + 1; k <= s.cutoff; ++k) {
      assign(k == s.special_index() ? s.special_word() : next_filler(s));
    }
    stages_.push_back(s);
  }

  std::uint64_t ceiling_;
  mutable std::mutex mutex_;
  mutable block::Cursor base_;
  mutable std::vector<Word> pending_;
  mutable std::vector<Word> words_;
  mutable std::unordered_map<Word, std::uint64_t, WordHash> index_;
  mutable std::vector<BadStage> stages_;
  mutable std::vector<bool> letters_seen_;
};

}  // namespace shadowlab
