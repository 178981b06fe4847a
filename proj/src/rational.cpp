#include "radgab/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "radgab/error.hpp"

namespace radgab {

namespace {

using wide = __int128;

wide gcd_wide(wide a, wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational reduce(wide num, wide den) {
  if (den == 0) throw std::domain_error("Rational: division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr wide lo = std::numeric_limits<std::int64_t>::min();
  constexpr wide hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw std::overflow_error("Rational: overflow");
  return Rational(Rational::Reduced{}, static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ValidationError("cannot parse number '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  const Rational r = reduce(num, den);
  num_ = r.num_;
  den_ = r.den_;
}

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ValidationError("cannot parse empty number");

  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return parse(text.substr(0, slash)) / parse(text.substr(slash + 1));

  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    exponent = static_cast<int>(parse_int(exp_text, whole));
    text = text.substr(0, e);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits(text);
  if (const auto dot = digits.find('.'); dot != std::string::npos) {
    exponent -= static_cast<int>(digits.size() - dot - 1);
    digits.erase(dot, 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError("cannot parse number '" + std::string(whole) + "'");
  if (digits.size() > 18 || exponent > 18 || exponent < -18)
    throw ValidationError("number '" + std::string(whole) + "' is out of exact range");
  Rational value(parse_int(digits, whole));
  std::int64_t scale = 1;
  for (int i = 0; i < std::abs(exponent); ++i) scale *= 10;
  value = exponent >= 0 ? value * Rational(scale) : value / Rational(scale);
  return negative ? -value : value;
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return reduce(-static_cast<wide>(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return reduce(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                static_cast<wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return reduce(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return reduce(static_cast<wide>(a.num_) * b.den_, static_cast<wide>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<wide>(a.num_) * b.den_ <=> static_cast<wide>(b.num_) * a.den_;
}

Exponent::Exponent(Rational value) {
  require(value > Rational(0), "exponent must be > 0");
  reciprocal_ = Rational(1) / value;
}

Exponent Exponent::parse(std::string_view text) {
  std::string lower;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "inf" || lower == "infinity" || lower == "+inf") return infinity();
  return Exponent(Rational::parse(text));
}

double Exponent::to_double() const {
  return is_infinite() ? std::numeric_limits<double>::infinity() : 1.0 / reciprocal_.to_double();
}

std::string Exponent::to_string() const {
  return is_infinite() ? "inf" : (Rational(1) / reciprocal_).to_string();
}

}  // namespace radgab
