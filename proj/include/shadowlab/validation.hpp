#pragma once

// Validators for enumerations: prefix/shift closure on a finite prefix, and
// the three staged conditions of the bad listing.

#include "shadowlab/bad_enumeration.hpp"
#include "shadowlab/enumeration.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace shadowlab {

struct Violation {
  std::string kind;
  std::uint64_t index = 0;
  std::string detail;
};

struct ValidationReport {
  std::string enumeration;
  std::string check;
  std::uint64_t entries_checked = 0;
  std::uint64_t stages_checked = 0;
  std::uint64_t coverage_words = 0;
  std::uint64_t coverage_witness = 0;  // every probed base word sits at an index <= this
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks p_1 = empty word, injectivity, prefix closure and shift closure
/// for the first `count` entries.
inline ValidationReport validate_pscomp(const Enumeration& e, std::uint64_t count) {
  if (count == 0) throw std::invalid_argument("validate_pscomp needs at least one entry");
  ValidationReport report{.enumeration = e.name(), .check = "prefix-shift-compatible"};
  std::unordered_map<Word, std::uint64_t, WordHash> first_seen;
  auto earlier = [&](const Word& u, std::uint64_t k) {
    auto it = first_seen.find(u);
    return it != first_seen.end() && it->second < k;
  };
  for (std::uint64_t k = 1; k <= count; ++k) {
    Word w;
    try {
      w = e.word_at(k);
    } catch (const ResourceLimitError& err) {
      report.violations.push_back({"unavailable", k, err.what()});
      break;
    }
    report.entries_checked = k;
    if (k == 1 && !w.empty()) report.violations.push_back({"first-not-empty", 1, "p_1 = " + format_word(w)});
    if (auto [it, inserted] = first_seen.try_emplace(w, k); !inserted) {
      report.violations.push_back(
          {"duplicate", k, format_word(w) + " already listed at " + std::to_string(it->second)});
      continue;
    }
    for (std::size_t len = 0; len < w.size(); ++len) {
      Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
      if (!earlier(prefix, k)) {
        report.violations.push_back(
            {"prefix-closure", k, "prefix " + format_word(prefix) + " of " + format_word(w) + " not listed earlier"});
      }
    }
    if (w.size() >= 2) {
      Word tail(w.begin() + 1, w.end());
      if (!earlier(tail, k)) {
        report.violations.push_back(
            {"shift-closure", k, "shift " + format_word(tail) + " of " + format_word(w) + " not listed earlier"});
      }
    }
  }
  return report;
}

/// Checks stages 1..max_stage of the bad listing: fresh distinct letters,
/// cutoff growth, conditions (i)-(iii), injectivity up to i_{max_stage},
/// and that each of the first `coverage_words` block-listing words is
/// eventually listed (recording the largest index needed).
inline ValidationReport validate_bad(const BadEnumeration& e, std::uint64_t max_stage,
                                     std::uint64_t coverage_words = 100) {
  if (max_stage == 0) throw std::invalid_argument("validate_bad needs at least one stage");
  ValidationReport report{.enumeration = e.name(), .check = "bad-stage-conditions"};
  const BadStage last = e.stage(max_stage);
  std::vector<Word> q(last.cutoff + 1);
  for (std::uint64_t k = 1; k <= last.cutoff; ++k) q[k] = e.word_at(k);
  report.entries_checked = last.cutoff;

  auto contains = [](const Word& w, Letter c) { return std::find(w.begin(), w.end(), c) != w.end(); };

  std::uint64_t previous_cutoff = 0;
  for (std::uint64_t n = 1; n <= max_stage; ++n) {
    const BadStage s = e.stage(n);
    const Letter letters[] = {s.a1, s.a2, s.a3, s.b};
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (letters[i] == letters[j]) {
          report.violations.push_back({"letters-not-distinct", s.cutoff, "stage " + std::to_string(n)});
        }
      }
    }
    for (std::uint64_t k = 1; k <= previous_cutoff; ++k) {
      for (Letter c : letters) {
        if (contains(q[k], c)) {
          report.violations.push_back({"letter-not-fresh", k,
                                       "stage " + std::to_string(n) + " letter " + std::to_string(c) +
                                           " occurs in " + format_word(q[k])});
        }
      }
    }
    if (n == 1 && s.cutoff < 2) report.violations.push_back({"cutoff", s.cutoff, "i_1 < 2"});
    if (n > 1 && s.special_index() <= previous_cutoff) {
      report.violations.push_back({"cutoff", s.cutoff, "i_n - n <= i_{n-1} at stage " + std::to_string(n)});
    }
    if (n > 1 && s.cutoff - previous_cutoff - 1 < n) {
      report.violations.push_back({"filler-slots", s.cutoff, "fewer than n filler slots at stage " + std::to_string(n)});
    }
    if (q[s.special_index()] != s.special_word()) {
      report.violations.push_back({"condition-i", s.special_index(),
                                   "expected " + format_word(s.special_word()) + ", found " +
                                       format_word(q[s.special_index()])});
    }
    for (std::uint64_t k = 1; k <= s.cutoff; ++k) {
      if (!q[k].empty() && q[k].front() == s.a2) {
        report.violations.push_back({"condition-ii", k, format_word(q[k]) + " starts with a2 of stage " +
                                                            std::to_string(n)});
      }
      if (contains(q[k], s.b)) {
        report.violations.push_back({"condition-iii", k, format_word(q[k]) + " contains b of stage " +
                                                             std::to_string(n)});
      }
    }
    previous_cutoff = s.cutoff;
    report.stages_checked = n;
  }

  std::unordered_map<Word, std::uint64_t, WordHash> seen;
  for (std::uint64_t k = 1; k <= last.cutoff; ++k) {
    if (auto [it, inserted] = seen.try_emplace(q[k], k); !inserted) {
      report.violations.push_back({"duplicate", k, format_word(q[k]) + " already listed at " +
                                                       std::to_string(it->second)});
    }
  }

  block::Cursor base;
  for (std::uint64_t j = 1; j <= coverage_words; ++j) {
    const Word& w = base.next();
    try {
      const Index k = e.index_of(w);
      report.coverage_witness = std::max(report.coverage_witness, static_cast<std::uint64_t>(k));
      if (e.word_at(k) != w) report.violations.push_back({"round-trip", j, format_word(w)});
    } catch (const ResourceLimitError& err) {
      report.violations.push_back({"coverage", j, err.what()});
    }
    report.coverage_words = j;
  }
  return report;
}

}  // namespace shadowlab
