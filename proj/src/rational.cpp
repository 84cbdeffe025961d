#include "capcover/rational.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace capcover {

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

static bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); i++)
    if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
  // no leading zeros except "0" itself
  size_t d = (s[0] == '-') ? 1 : 0;
  if (s[d] == '0' && s.size() > d + 1) return false;
  if (s == "-0") return false;
  return true;
}

std::optional<Rational> parse_rational_strict(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text)) return std::nullopt;
    return Rational(BigInt(text));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
  BigInt n(num), d(den);
  if (d <= 1) return std::nullopt;  // q>0 and "p/1" must be written "p"
  if (gcd(abs(n), d) != 1) return std::nullopt;
  Rational r(n);
  r /= d;
  return r;
}

Rational parse_rational(const std::string& text) {
  auto r = parse_rational_strict(text);
  if (!r) throw std::invalid_argument("not a canonical rational: '" + text + "'");
  return *r;
}

int Quad5::sgn() const {
  int sa = a.sign(), sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with 5 b^2
  Rational a2 = a * a, b2 = 5 * b * b;
  if (a2 == b2) return 0;
  bool rational_part_wins = a2 > b2;
  return rational_part_wins ? sa : sb;
}

Quad5 Quad5::inverse() const {
  // 1/(a+b sqrt5) = (a - b sqrt5) / (a^2 - 5 b^2)
  Rational norm = a * a - 5 * b * b;
  if (norm == 0) throw std::domain_error("division by zero in Q(sqrt5)");
  return {a / norm, -b / norm};
}

double Quad5::approx() const {
  return a.convert_to<double>() + b.convert_to<double>() * 2.236067977499789696;
}

std::string format_expansion(const Quad5& e) {
  if (e.is_rational()) return format_rational(e.a);
  if (e.a == 2 && e.b == 1) return "2+sqrt5";
  throw std::invalid_argument("expansion has no canonical text form");
}

std::optional<Quad5> parse_expansion(const std::string& text) {
  if (text == "2+sqrt5") return Quad5(Rational(2), Rational(1));
  auto r = parse_rational_strict(text);
  if (!r) return std::nullopt;
  return Quad5(*r);
}

}  // namespace capcover
