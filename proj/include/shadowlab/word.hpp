#pragma once

// Letters, finite words and eventually periodic points of the one-sided
// full shift over the positive integers, together with the shift map.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shadowlab {

/// Letters are the positive integers; 0 is never a valid letter.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// A finite word, or an infinite word preamble . period^omega.
///
/// Infinite points are always stored canonically: the period is primitive
/// and the preamble cannot be shortened by rotating the period. Structural
/// equality therefore coincides with equality as sequences.
class Point {
 public:
  Point() = default;  // the empty word

  static Point finite(Word word) {
    Point p;
    p.head_ = std::move(word);
    return p;
  }

  /// Throws std::invalid_argument on an empty period.
  static Point infinite(Word preamble, Word period);

  bool is_finite() const { return period_.empty(); }
  bool is_infinite() const { return !period_.empty(); }
  bool is_empty() const { return is_finite() && head_.empty(); }

  /// Finite word, or the preamble of an infinite point.
  const Word& head() const { return head_; }
  /// Empty for finite points.
  const Word& period() const { return period_; }

  /// nullopt for infinite points.
  std::optional<std::size_t> length() const {
    if (is_infinite()) return std::nullopt;
    return head_.size();
  }
  bool has_length_at_least(std::size_t n) const { return is_infinite() || head_.size() >= n; }

  /// 0-based letter access; throws std::out_of_range past the end of a finite word.
  Letter at(std::size_t i) const {
    if (i < head_.size()) return head_[i];
    if (is_finite()) throw std::out_of_range("letter index past end of finite word");
    return period_[(i - head_.size()) % period_.size()];
  }

  /// The first min(n, |x|) letters.
  Word take(std::size_t n) const {
    if (is_finite()) n = std::min(n, head_.size());
    Word out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
  }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  Word head_;
  Word period_;
};

namespace detail {

inline Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return w;
}

}  // namespace detail

inline Point Point::infinite(Word preamble, Word period) {
  if (period.empty()) throw std::invalid_argument("infinite point needs a nonempty period");
  period = detail::primitive_root(period);
  // Absorb trailing preamble letters into the periodic tail.
  while (!preamble.empty() && preamble.back() == period.back()) {
    preamble.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  Point p;
  p.head_ = std::move(preamble);
  p.period_ = std::move(period);
  return p;
}

/// Canonical infinite point equal to preamble . period^omega.
inline Point canonicalize(Word preamble, Word period) {
  return Point::infinite(std::move(preamble), std::move(period));
}

/// u is a prefix of x. The empty word is a prefix of every point.
inline bool is_prefix(std::span<const Letter> u, const Point& x) {
  if (!x.has_length_at_least(u.size())) return false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (x.at(i) != u[i]) return false;
  }
  return true;
}

/// Prefix relation between finite words.
inline bool is_word_prefix(std::span<const Letter> u, std::span<const Letter> v) {
  return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}

/// sigma^m. Finite words lose min(m, |x|) letters, so words of length <= 1
/// map to the empty word, which is fixed.
inline Point iterate_shift(const Point& x, std::uint64_t m) {
  const Word& head = x.head();
  if (m <= head.size()) {
    Word rest(head.begin() + static_cast<std::ptrdiff_t>(m), head.end());
    if (x.is_finite()) return Point::finite(std::move(rest));
    return Point::infinite(std::move(rest), x.period());
  }
  if (x.is_finite()) return Point{};
  Word period = x.period();
  const auto k = static_cast<std::ptrdiff_t>((m - head.size()) % period.size());
  std::rotate(period.begin(), period.begin() + k, period.end());
  return Point::infinite({}, std::move(period));
}

inline Point shift(const Point& x) { return iterate_shift(x, 1); }

/// Index after which the letters of two eventually periodic infinite points
/// repeat jointly; agreement up to it means equality.
inline std::size_t comparison_bound(const Point& x, const Point& y) {
  return x.head().size() + y.head().size() + std::lcm(x.period().size(), y.period().size());
}

/// N(x, y) = min{n >= 0 : x_n != y_n}, nullopt when x = y. Infinite points only.
inline std::optional<std::size_t> first_diff_index(const Point& x, const Point& y) {
  if (x.is_finite() || y.is_finite()) {
    throw std::invalid_argument("first_diff_index is defined on infinite points only");
  }
  const std::size_t bound = comparison_bound(x, y);
  for (std::size_t i = 0; i < bound; ++i) {
    if (x.at(i) != y.at(i)) return i;
  }
  return std::nullopt;
}

/// Length of the longest common prefix of two distinct points; nullopt when
/// they are equal. Works for finite and infinite points alike.
inline std::optional<std::size_t> common_prefix_length(const Point& x, const Point& y) {
  if (x == y) return std::nullopt;
  if (x.is_infinite() && y.is_infinite()) return first_diff_index(x, y);
  const std::size_t limit = std::min(x.length().value_or(std::numeric_limits<std::size_t>::max()),
                                     y.length().value_or(std::numeric_limits<std::size_t>::max()));
  for (std::size_t i = 0; i < limit; ++i) {
    if (x.at(i) != y.at(i)) return i;
  }
  return limit;
}

// ---------------------------------------------------------------------------
// Word literals: "e" | digits("." digits)*, optionally followed by
// "(" word ")" for an infinite point preamble(period)^omega.

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  Point parse() {
    if (at_end()) fail("empty literal");
    Word head;
    if (peek() != '(') head = word();
    if (at_end()) return Point::finite(std::move(head));
    expect('(');
    if (peek_or('\0') == ')') fail("empty period");
    Word period = word();
    if (period.empty()) fail("empty period");
    expect(')');
    if (!at_end()) fail("trailing characters");
    return Point::infinite(std::move(head), std::move(period));
  }

 private:
  Word word() {
    if (peek_or('\0') == 'e') {
      ++pos_;
      return {};
    }
    Word w;
    w.push_back(letter());
    while (peek_or('\0') == '.') {
      ++pos_;
      w.push_back(letter());
    }
    return w;
  }

  Letter letter() {
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (!at_end() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > std::numeric_limits<Letter>::max()) fail("letter id too large", start);
      ++pos_;
    }
    if (pos_ == start) fail("expected letter id");
    if (value == 0) fail("letter id 0 is not a letter", start);
    return static_cast<Letter>(value);
  }

  void expect(char c) {
    if (peek_or('\0') != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char peek_or(char fallback) const { return at_end() ? fallback : text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t where) const { throw ParseError(what, where); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Point parse_point(std::string_view text) { return detail::LiteralParser(text).parse(); }

/// Parses a finite word literal; rejects infinite points.
inline Word parse_word(std::string_view text) {
  Point p = parse_point(text);
  if (p.is_infinite()) throw ParseError("expected a finite word", 0);
  return p.head();
}

inline std::string format_word(std::span<const Letter> w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(w[i]);
  }
  return out;
}

inline std::string format_point(const Point& x) {
  if (x.is_finite()) return format_word(x.head());
  std::string out = x.head().empty() ? std::string{} : format_word(x.head());
  return out + "(" + format_word(x.period()) + ")";
}

}  // namespace shadowlab
