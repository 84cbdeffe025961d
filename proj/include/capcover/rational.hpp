#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace capcover {

// et_off so every arithmetic expression yields a concrete value; this keeps
// std::min/max and mixed comparisons working without surprise template types.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

// The backend constructor takes the denominator as unsigned, so negative
// denominators must be folded into the numerator here.
inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) return Rational(-num, -den);
  return Rational(num, den);
}

inline int sign(const Rational& q) { return q.sign(); }

// Canonical text form: "p" when the reduced denominator is 1, else "p/q" with q > 0.
std::string format_rational(const Rational& q);

// Parses the canonical form only; returns nullopt on anything else
// (unreduced fractions, q <= 0, "p/1", whitespace, empty).
std::optional<Rational> parse_rational_strict(const std::string& text);

// Throwing wrapper used by file parsers.
Rational parse_rational(const std::string& text);

// Value a + b*sqrt(5) in the field Q(sqrt 5); comparisons are exact.
struct Quad5 {
  Rational a;
  Rational b;

  Quad5() = default;
  Quad5(Rational a_) : a(std::move(a_)), b(0) {}
  Quad5(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
  Quad5(long v) : a(v), b(0) {}

  static Quad5 sqrt5() { return Quad5(Rational(0), Rational(1)); }

  Quad5 operator+(const Quad5& o) const { return {a + o.a, b + o.b}; }
  Quad5 operator-(const Quad5& o) const { return {a - o.a, b - o.b}; }
  Quad5 operator-() const { return {-a, -b}; }
  Quad5 operator*(const Quad5& o) const {
    return {a * o.a + 5 * b * o.b, a * o.b + b * o.a};
  }
  Quad5 inverse() const;
  Quad5 operator/(const Quad5& o) const { return *this * o.inverse(); }

  // sign of a + b*sqrt5: resolved by comparing a^2 against 5 b^2 when signs differ
  int sgn() const;

  bool operator==(const Quad5& o) const { return a == o.a && b == o.b; }
  bool operator!=(const Quad5& o) const { return !(*this == o); }
  bool operator<(const Quad5& o) const { return (*this - o).sgn() < 0; }
  bool operator<=(const Quad5& o) const { return (*this - o).sgn() <= 0; }
  bool operator>(const Quad5& o) const { return (*this - o).sgn() > 0; }
  bool operator>=(const Quad5& o) const { return (*this - o).sgn() >= 0; }

  bool is_rational() const { return b == 0; }
  double approx() const;
};

// Canonical text: rational part alone when b=0; the literal "2+sqrt5" for that
// constant; no other irrational values appear in files.
std::string format_expansion(const Quad5& e);
std::optional<Quad5> parse_expansion(const std::string& text);

}  // namespace capcover
