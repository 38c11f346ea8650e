#include "replete/rational.hpp"

#include "replete/errors.hpp"

#include <cctype>

namespace replete {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("not an integer: '" + std::string(s) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

Rational parse_decimal(std::string_view s) {
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exp10 = parse_integer(s.substr(e + 1)).get_si();
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    exp10 -= static_cast<long>(s.size() - dot - 1);
  } else {
    digits = std::string(s);
  }
  if (!all_digits(digits)) throw DomainError("not a number: '" + std::string(s) + "'");
  Rational q(Integer(digits, 10));
  Integer ten = 10;
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0) q /= scale; else q *= scale;
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw DomainError("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    Rational q(parse_integer(text.substr(0, slash)), den);
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer common_denominator(const RationalVector& v) {
  Integer d = 1;
  for (const auto& q : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
  return d;
}

Rational pow2(long k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  return k < 0 ? Rational(Integer(1), p) : Rational(p);
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw DomainError("zero raised to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  for (unsigned long e = static_cast<unsigned long>(exponent); e; e >>= 1) {
    if (e & 1) result *= b;
    b *= b;
  }
  return result;
}

}  // namespace replete
