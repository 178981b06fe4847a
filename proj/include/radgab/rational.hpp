#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace radgab {

/// Exact fraction num/den with den > 0 and gcd(num, den) = 1. Arithmetic uses
/// 128-bit intermediates and throws std::overflow_error if a reduced result
/// does not fit in 64 bits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "3", "-1/3", "0.25", "1e-3".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Wraps an already reduced pair without checking it.
  struct Reduced {};
  constexpr Rational(Reduced, std::int64_t num, std::int64_t den) : num_(num), den_(den) {}

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A Lebesgue exponent in (0, inf], stored as its reciprocal so that inf is
/// exact: 1/inf = 0.
class Exponent {
 public:
  explicit Exponent(Rational value);
  static Exponent infinity() { return Exponent(Tag{}); }

  /// Accepts any Rational::parse text plus "inf" / "infinity".
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return reciprocal_ == Rational(0); }
  Rational reciprocal() const { return reciprocal_; }
  /// The value; +infinity when infinite.
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) = default;
  /// Ordered by value, so inf is the largest.
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    return b.reciprocal_ <=> a.reciprocal_;
  }

 private:
  struct Tag {};
  explicit Exponent(Tag) : reciprocal_(0) {}
  Rational reciprocal_;
};

}  // namespace radgab
