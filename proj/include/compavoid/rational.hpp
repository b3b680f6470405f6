#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace compavoid {

/// Exact rational number p/q, stored reduced with q > 0.
///
/// Used for word exponents and repetition thresholds. Comparisons are done by
/// cross-multiplication in 128-bit integers; arithmetic throws
/// std::overflow_error if a reduced result does not fit in 64 bits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Parses "p/q" or "p".
  static Rational parse(std::string_view text);
  std::string str() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Smallest integer >= this value.
  std::int64_t ceil() const;
  std::int64_t floor() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exponent |w| / per(w) of a finite word.
using ExponentValue = Rational;

}  // namespace compavoid
