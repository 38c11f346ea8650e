#pragma once

#include "replete/rational.hpp"

#include <string>
#include <vector>

namespace replete {

// Dense univariate polynomial over Q, coefficients stored constant term first.
// The zero polynomial has no coefficients; leading coefficients are never zero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RationalVector coeffs);
  static Polynomial monomial(const Rational& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const RationalVector& coeffs() const { return coeffs_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  RationalVector coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

DivMod divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial squarefree_part(const Polynomial& p);
// Resultant via the Euclidean remainder sequence over Q.
Rational resultant(const Polynomial& a, const Polynomial& b);
// Number of distinct real roots (Sturm sequence).
int count_real_roots(const Polynomial& p);
// Scales to coprime integer coefficients with positive leading coefficient.
std::vector<Integer> primitive_integer_coeffs(const Polynomial& p);

}  // namespace replete
