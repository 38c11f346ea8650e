#include "replete/number_field.hpp"

#include "replete/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace replete {

namespace {

constexpr long kBaseRootBits = 256;

bool is_squarefree_integer(long d) {
  long m = d < 0 ? -d : d;
  for (long p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

Polynomial integer_poly(const std::vector<Integer>& c) {
  RationalVector v;
  for (const auto& z : c) v.emplace_back(z);
  return Polynomial(std::move(v));
}

// Nearest integer to the midpoint of an interval.
Integer nearest_integer(const Interval& x) {
  Integer z;
  mpfr_t m;
  mpfr_init2(m, x.precision());
  mpfr_add(m, x.lo(), x.hi(), MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_get_z(z.get_mpz_t(), m, MPFR_RNDN);
  mpfr_clear(m);
  return z;
}

}  // namespace

bool FieldElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return q == 0; });
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  for (std::size_t i = 0; i < std::min(a.coords.size(), b.coords.size()); ++i) {
    int c = cmp(a.coords[i], b.coords[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.coords.size() <=> b.coords.size();
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

FieldElement operator-(const FieldElement& a) {
  FieldElement r = a;
  for (auto& c : r.coords) c = -c;
  return r;
}

FieldElement operator*(const Rational& c, const FieldElement& a) {
  FieldElement r = a;
  for (auto& x : r.coords) x *= c;
  return r;
}

std::string to_string(const FieldElement& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.coords.size(); ++i) os << (i ? "," : "") << a.coords[i].get_str();
  os << "]";
  return os.str();
}

NumberField NumberField::from_spec(const FieldSpec& spec) {
  NumberField k;
  k.initialise(spec);
  return k;
}

NumberField NumberField::rationals() {
  NumberField k = from_spec({{Integer(0), Integer(1)}, std::nullopt});
  k.name_ = "Q";
  return k;
}

NumberField NumberField::quadratic(long d) {
  if (d == 0 || d == 1 || !is_squarefree_integer(d))
    throw DomainError("Q(sqrt d) needs a squarefree d other than 0 and 1, got " + std::to_string(d));
  FieldSpec spec{{Integer(-d), Integer(0), Integer(1)}, std::nullopt};
  long m4 = ((d % 4) + 4) % 4;
  if (m4 == 1) {
    QMatrix b(2, 2);
    b(0, 0) = 1;
    b(1, 0) = Rational(1, 2);
    b(1, 1) = Rational(1, 2);
    spec.basis = b;
  }
  NumberField k = from_spec(spec);
  k.name_ = d == -1 ? "Q(i)" : "Q(sqrt(" + std::to_string(d) + "))";
  return k;
}

void NumberField::initialise(const FieldSpec& spec) {
  if (spec.poly.size() < 2) throw DomainError("defining polynomial must have degree >= 1");
  if (spec.poly.back() != 1) throw DomainError("defining polynomial must be monic");
  poly_ = integer_poly(spec.poly);
  n_ = poly_.degree();
  if (gcd(poly_, poly_.derivative()).degree() > 0) throw DomainError("defining polynomial is not squarefree");

  const std::size_t n = static_cast<std::size_t>(n_);
  if (spec.basis) {
    if (spec.basis->rows() != n || spec.basis->cols() != n)
      throw DomainError("integral basis must be an n x n matrix");
    basis_ = *spec.basis;
    if (determinant(basis_) == 0) throw DomainError("integral basis is singular");
  } else {
    basis_ = QMatrix::identity(n);
  }
  power_basis_ = basis_ == QMatrix::identity(n);
  basis_inv_ = inverse(basis_);

  // Structure constants; the basis must span a ring containing 1.
  mult_table_.assign(n, std::vector<FieldElement>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Polynomial prod = Polynomial(basis_.row(i)) * Polynomial(basis_.row(j));
      RationalVector p(n);
      Polynomial red = prod % poly_;
      for (std::size_t k = 0; k < n; ++k) p[k] = red.coeff(static_cast<int>(k));
      FieldElement e{row_times(p, basis_inv_)};
      for (const auto& c : e.coords)
        if (c.get_den() != 1) throw DomainError("integral basis is not closed under multiplication");
      mult_table_[i][j] = e;
      mult_table_[j][i] = e;
    }
  for (const auto& c : one().coords)
    if (c.get_den() != 1) throw DomainError("integral basis does not contain 1");

  // Traces of powers of θ by Newton's identities.
  RationalVector power_sums(n);
  power_sums[0] = n_;
  for (std::size_t k = 1; k < n; ++k) {
    Rational pk = -Rational(static_cast<long>(k)) * poly_.coeff(n_ - static_cast<int>(k));
    for (std::size_t i = 1; i < k; ++i) pk -= poly_.coeff(n_ - static_cast<int>(i)) * power_sums[k - i];
    power_sums[k] = pk;
  }
  basis_traces_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) basis_traces_[i] += basis_(i, k) * power_sums[k];
  trace_matrix_ = QMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) trace_matrix_(i, j) = trace(mult_table_[i][j]);
  Rational disc = determinant(trace_matrix_);
  if (disc.get_den() != 1) throw DomainError("integral basis is not integral");
  disc_ = disc.get_num();

  RootIsolation iso = isolate_roots(poly_, kBaseRootBits);
  r_ = iso.real_count;
  s_ = iso.complex_pairs;
  for (auto& root : iso.roots) places_.push_back({root.is_real, std::move(root)});
  if (sgn(disc_) != (s_ % 2 ? -1 : 1)) throw DomainError("discriminant sign disagrees with the signature");

  check_irreducible();

  for (std::size_t i = 0; i < n; ++i) {
    FieldElement w{RationalVector(n)};
    w.coords[i] = 1;
    auto emb = embed(w, 60);
    for (const auto& z : emb) basis_embeddings_.emplace_back(z.re.mid_double(), z.im.mid_double());
  }
  std::ostringstream os;
  os << "Q[x]/(" << poly_.to_string() << ")";
  name_ = os.str();
}

void NumberField::check_irreducible() {
  if (n_ == 1) return;
  if (n_ > 4) {
    irreducibility_asserted_ = true;
    return;
  }
  // All roots, conjugates included.
  std::vector<ComplexInterval> all;
  for (const auto& p : places_) {
    all.push_back(p.root.box);
    if (!p.is_real) all.emplace_back(p.root.box.re, -p.root.box.im);
  }
  // A monic integer polynomial's rational roots are integers.
  for (const auto& z : all) {
    if (!z.im.contains_zero()) continue;
    Integer c = nearest_integer(z.re);
    if (poly_(Rational(c)) == 0) throw DomainError("defining polynomial is reducible (root " + c.get_str() + ")");
  }
  if (n_ < 4) return;
  // Monic integer quadratic factors x^2 - (a+b) x + ab over pairs of roots.
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      ComplexInterval sum(all[i].re + all[j].re, all[i].im + all[j].im);
      ComplexInterval prod = all[i] * all[j];
      if (!sum.im.contains_zero() || !prod.im.contains_zero()) continue;
      Integer sc = nearest_integer(sum.re), pc = nearest_integer(prod.re);
      Polynomial q({Rational(pc), Rational(-sc), Rational(1)});
      if ((poly_ % q).is_zero()) throw DomainError("defining polynomial is reducible (quadratic factor)");
    }
}

FieldElement NumberField::zero() const { return {RationalVector(static_cast<std::size_t>(n_))}; }

FieldElement NumberField::one() const { return from_integer(1); }

FieldElement NumberField::generator() const {
  RationalVector p(static_cast<std::size_t>(n_));
  if (n_ == 1) p[0] = -poly_.coeff(0);
  else p[1] = 1;
  return from_power_coords(p);
}

FieldElement NumberField::from_integer(const Rational& q) const {
  RationalVector p(static_cast<std::size_t>(n_));
  p[0] = q;
  return from_power_coords(p);
}

FieldElement NumberField::element(RationalVector coords) const {
  if (coords.size() != static_cast<std::size_t>(n_))
    throw DomainError("element needs " + std::to_string(n_) + " coordinates, got " + std::to_string(coords.size()));
  for (auto& c : coords) c.canonicalize();
  return {std::move(coords)};
}

FieldElement NumberField::from_power_coords(const RationalVector& p) const { return {row_times(p, basis_inv_)}; }

RationalVector NumberField::to_power_coords(const FieldElement& a) const { return row_times(a.coords, basis_); }

std::optional<Rational> NumberField::as_rational(const FieldElement& a) const {
  RationalVector p = to_power_coords(a);
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] != 0) return std::nullopt;
  return p[0];
}

FieldElement NumberField::mul(const FieldElement& a, const FieldElement& b) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  FieldElement r = zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coords[j] == 0) continue;
      Rational c = a.coords[i] * b.coords[j];
      const auto& t = mult_table_[i][j].coords;
      for (std::size_t k = 0; k < n; ++k) r.coords[k] += c * t[k];
    }
  }
  return r;
}

QMatrix NumberField::multiplication_matrix(const FieldElement& a) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    FieldElement w = zero();
    w.coords[i] = 1;
    m.set_row(i, mul(w, a).coords);
  }
  return m;
}

FieldElement NumberField::inv(const FieldElement& a) const {
  if (a.is_zero()) throw DomainError("inversion of zero");
  return {row_times(one().coords, inverse(multiplication_matrix(a)))};
}

FieldElement NumberField::pow(const FieldElement& a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  FieldElement result = one(), base = a;
  for (; e; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

Rational NumberField::norm(const FieldElement& a) const {
  return resultant(poly_, Polynomial(to_power_coords(a)));
}

Rational NumberField::trace(const FieldElement& a) const {
  Rational t = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) t += a.coords[i] * basis_traces_[i];
  return t;
}

Polynomial NumberField::characteristic_polynomial(const FieldElement& a) const {
  return replete::characteristic_polynomial(multiplication_matrix(a));
}

RootIsolation NumberField::roots(long bits) const { return isolate_roots(poly_, bits); }

std::vector<ComplexInterval> NumberField::embed(const FieldElement& a, long bits, long cap_bits) const {
  if (bits < 16) throw DomainError("embedding precision must be at least 16 bits");
  const RationalVector p = to_power_coords(a);
  long extra = 32;
  while (true) {
    const long work = bits + extra;
    if (work > cap_bits + 64) throw PrecisionError("embedding exceeded the precision cap");
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(work);
    std::vector<RootEnclosure> fresh;
    if (work > kBaseRootBits - 16) fresh = isolate_roots(poly_, work).roots;
    std::vector<ComplexInterval> out;
    bool ok = true;
    for (std::size_t v = 0; v < places_.size(); ++v) {
      const RootEnclosure& root = fresh.empty() ? places_[v].root : fresh[v];
      const Interval zero_iv(Rational(0), prec);
      if (places_[v].is_real) {
        Interval acc(prec);
        Interval x = zero_iv + root.box.re;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Interval(*it, prec);
        ok = ok && acc.width_at_most_pow2(bits);
        out.emplace_back(std::move(acc), zero_iv);
      } else {
        ComplexInterval acc(prec);
        ComplexInterval z(zero_iv + root.box.re, zero_iv + root.box.im);
        for (auto it = p.rbegin(); it != p.rend(); ++it) {
          acc = acc * z;
          acc.re = acc.re + Interval(*it, prec);
        }
        ok = ok && acc.re.width_at_most_pow2(bits) && acc.im.width_at_most_pow2(bits);
        out.push_back(std::move(acc));
      }
    }
    if (ok) return out;
    extra *= 2;
  }
}

}  // namespace replete
