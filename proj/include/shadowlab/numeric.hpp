#pragma once

// Exact arithmetic shared by every module: unbounded indices, exact rationals
// and the rank type used for ultrametric distances.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shadowlab {

/// Position in an enumeration of finite words (1-based). Unbounded: block
/// indices of words over large letters exceed 2^64 quickly.
using Index = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when a lazily materialized structure would have to grow past its
/// configured ceiling. Never converted into a (wrong) answer.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Index pow_index(const Index& base, std::uint64_t exponent) {
  Index result = 1;
  Index b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

inline Rational pow2_neg(std::uint64_t k) {
  Index denom = Index(1) << static_cast<unsigned>(k);
  return Rational(Index(1), denom);
}

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// If q = 2^-k for some k >= 0, returns k.
inline std::optional<std::uint64_t> dyadic_exponent(const Rational& q) {
  if (numerator(q) != 1) return std::nullopt;
  const Index& d = denominator(q);
  if ((d & (d - 1)) != 0) return std::nullopt;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(d));
}

/// Formats 2^-k values as "2^-k", everything else as "p/q".
inline std::string format_rational(const Rational& q) {
  if (auto k = dyadic_exponent(q); k && *k > 0) return "2^-" + std::to_string(*k);
  return to_string(q);
}

namespace detail {
inline Index parse_index(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad integer literal '" + std::string(s) + "'");
  }
  return Index(std::string(s));
}
}  // namespace detail

/// Accepts "2^-k", "p/q" or an integer.
inline Rational parse_rational(std::string_view s) {
  if (s.rfind("2^-", 0) == 0) {
    std::uint64_t k = 0;
    auto tail = s.substr(3);
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), k);
    if (ec != std::errc{} || ptr != tail.data() + tail.size() || k > 4096) {
      throw std::invalid_argument("bad dyadic literal '" + std::string(s) + "'");
    }
    return pow2_neg(k);
  }
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Index den = detail::parse_index(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return Rational(detail::parse_index(s.substr(0, slash)), den);
  }
  return Rational(detail::parse_index(s));
}

/// Exponent rank of an ultrametric distance; larger rank means closer points.
/// The infinite rank encodes distance 0.
class Rank {
 public:
  Rank() = default;  // infinite
  explicit Rank(Index value) : value_(std::move(value)) {}

  static Rank infinity() { return Rank{}; }

  bool is_infinite() const { return !value_.has_value(); }
  const Index& value() const {
    if (!value_) throw std::logic_error("infinite rank has no finite value");
    return *value_;
  }

  std::string str() const { return value_ ? value_->str() : "inf"; }

  friend bool operator==(const Rank& a, const Rank& b) { return a.value_ == b.value_; }
  friend bool operator<(const Rank& a, const Rank& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }
  friend bool operator>(const Rank& a, const Rank& b) { return b < a; }
  friend bool operator<=(const Rank& a, const Rank& b) { return !(b < a); }
  friend bool operator>=(const Rank& a, const Rank& b) { return !(a < b); }
  friend std::ostream& operator<<(std::ostream& os, const Rank& r) { return os << r.str(); }

 private:
  std::optional<Index> value_;
};

inline const Rank& min(const Rank& a, const Rank& b) { return b < a ? b : a; }

}  // namespace shadowlab
