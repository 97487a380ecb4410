// Exact arithmetic on the unit interval.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace laxkit {

/// Unbounded exact rational. Used for intermediate LP quantities and slacks.
using Rational = mpq_class;

/// Raised when an input does not have the required shape (carrier mismatch,
/// out-of-range value, ill-typed functor element, ...).
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the text parsers; carries the byte offset of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("at offset " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Parses "p/q", an integer, or a finite decimal ("0.25", "-1.5") exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](std::size_t pos, const std::string& why) -> Rational {
    throw ParseError(pos, "invalid rational '" + std::string(text) + "': " + why);
  };
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t')) --end;
  std::string_view body = text.substr(begin, end - begin);
  if (body.empty()) return fail(begin, "empty");

  bool negative = false;
  std::size_t i = 0;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    i = 1;
  }
  std::string numerator;
  std::string denominator = "1";
  bool seen_digit = false;
  for (; i < body.size() && body[i] >= '0' && body[i] <= '9'; ++i) {
    numerator.push_back(body[i]);
    seen_digit = true;
  }
  if (i < body.size() && body[i] == '.') {
    ++i;
    std::size_t frac_digits = 0;
    for (; i < body.size() && body[i] >= '0' && body[i] <= '9'; ++i) {
      numerator.push_back(body[i]);
      ++frac_digits;
      seen_digit = true;
    }
    denominator = "1" + std::string(frac_digits, '0');
  } else if (i < body.size() && body[i] == '/') {
    ++i;
    denominator.clear();
    for (; i < body.size() && body[i] >= '0' && body[i] <= '9'; ++i) denominator.push_back(body[i]);
    if (denominator.empty()) return fail(begin + i, "missing denominator");
  }
  if (!seen_digit) return fail(begin, "no digits");
  if (i != body.size()) return fail(begin + i, "unexpected character");

  mpz_class num(numerator, 10);
  mpz_class den(denominator, 10);
  if (den == 0) return fail(begin, "zero denominator");
  Rational value(num, den);
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& value) { return value.get_str(); }

/// A value of the unit interval [0,1], stored exactly.
///
/// Every constructor and operation keeps the value inside [0,1]; oplus and
/// ominus truncate, everything else is closed on the interval already.
class Scalar {
 public:
  Scalar() = default;

  /// Throws StructureError when `value` lies outside [0,1].
  explicit Scalar(const Rational& value) : value_(value) {
    value_.canonicalize();
    if (value_ < 0 || value_ > 1) {
      throw StructureError("value " + to_string(value_) + " outside [0,1]");
    }
  }

  Scalar(long numerator, unsigned long denominator) : Scalar(Rational(numerator, denominator)) {}

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(Rational(1)); }

  static Scalar clamp(Rational value) {
    if (value < 0) return zero();
    if (value > 1) return one();
    return Scalar(value);
  }

  static Scalar parse(std::string_view text) { return Scalar(parse_rational(text)); }

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  Scalar complement() const { return Scalar(Rational(1 - value_)); }

  std::string str() const { return to_string(value_); }
  double to_double() const { return value_.get_d(); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Truncated sum min(a+b, 1).
  friend Scalar oplus(const Scalar& a, const Scalar& b) { return clamp(a.value_ + b.value_); }
  /// Truncated difference max(a-b, 0).
  friend Scalar ominus(const Scalar& a, const Scalar& b) { return clamp(a.value_ - b.value_); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return Scalar(Rational(a.value_ * b.value_)); }

 private:
  Rational value_{0};
};

/// |a - b|, which always stays inside [0,1].
inline Scalar abs_diff(const Scalar& a, const Scalar& b) {
  return a < b ? ominus(b, a) : ominus(a, b);
}

}  // namespace laxkit
