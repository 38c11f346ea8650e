#include "replete/polynomial.hpp"

#include "replete/errors.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace replete {

Polynomial::Polynomial(RationalVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
  RationalVector v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() < 1) return {};
  RationalVector d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return inv * *this;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  RationalVector v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < a.coeffs_.size()) v[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) v[i] += b.coeffs_[i];
  }
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RationalVector v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(const Rational& c, const Polynomial& a) {
  RationalVector v = a.coeffs_;
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  RationalVector rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {{}, a};
  RationalVector quo(static_cast<std::size_t>(a.degree() - db) + 1);
  const Rational inv_lead = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational c = rem[static_cast<std::size_t>(i)] * inv_lead;
    quo[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).remainder; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() < 1) return p.monic();
  return divmod(p, gcd(p, p.derivative())).quotient.monic();
}

Rational resultant(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  // res(a, b) = (-1)^{deg a deg b} res(b, a);  res(a, b) = lc(b)^{deg a - deg r} res(b, r) for deg a >= deg b
  // with r = a mod b, after swapping so the first argument has the larger degree.
  Polynomial x = a, y = b;
  Rational result = 1;
  if (x.degree() < y.degree()) {
    std::swap(x, y);
    if ((x.degree() * y.degree()) % 2) result = -result;
  }
  while (y.degree() > 0) {
    Polynomial r = x % y;
    if (r.is_zero()) return 0;
    // res(x, y) = (-1)^{dx dy} lc(y)^{dx - dr} res(y, r)
    const int dx = x.degree(), dy = y.degree(), dr = r.degree();
    if ((dx * dy) % 2) result = -result;
    result *= pow(y.leading(), dx - dr);
    x = std::move(y);
    y = std::move(r);
  }
  // y is a nonzero constant: res(x, c) = c^{deg x}
  result *= pow(y.leading(), x.degree());
  return result;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sign_at_infinity(const Polynomial& p, bool positive) {
  int s = sgn(p.leading());
  if (!positive && p.degree() % 2) s = -s;
  return s;
}

}  // namespace

int count_real_roots(const Polynomial& p) {
  Polynomial f = squarefree_part(p);
  if (f.degree() < 1) return 0;
  std::vector<Polynomial> seq{f, f.derivative()};
  while (seq.back().degree() > 0) {
    Polynomial r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(Rational(-1) * r);
  }
  std::vector<int> neg, pos;
  for (const auto& q : seq) {
    neg.push_back(sign_at_infinity(q, false));
    pos.push_back(sign_at_infinity(q, true));
  }
  return sign_changes(neg) - sign_changes(pos);
}

std::vector<Integer> primitive_integer_coeffs(const Polynomial& p) {
  Integer den = common_denominator(p.coeffs());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Rational scaled = c * den;
    out.push_back(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g == 0) return out;
  if (out.back() < 0) g = -g;
  for (auto& z : out) z /= g;
  return out;
}

}  // namespace replete
