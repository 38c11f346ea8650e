#include "replete/ideal.hpp"

#include "replete/errors.hpp"

#include <sstream>

namespace replete {

namespace {

FieldElement row_element(const ZMatrix& m, std::size_t i, const Integer& den) {
  FieldElement e{RationalVector(m.cols())};
  for (std::size_t j = 0; j < m.cols(); ++j) {
    e.coords[j] = Rational(m(i, j), den);
    e.coords[j].canonicalize();
  }
  return e;
}

// Dual lattice {x : <x, v> in Z for every v} of the full-rank span of `vectors`.
FracIdeal dual_of_span(const std::vector<RationalVector>& vectors) {
  FracIdeal span = lattice_from_rows(vectors);
  const std::size_t n = span.hnf.rows();
  QMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      c(i, j) = Rational(span.hnf(i, j), span.denominator);
      c(i, j).canonicalize();
    }
  QMatrix d = inverse(c.transpose());
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(d.row(i));
  return lattice_from_rows(rows);
}

}  // namespace

std::vector<FieldElement> FracIdeal::basis() const {
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < hnf.rows(); ++i) out.push_back(row_element(hnf, i, denominator));
  return out;
}

std::string to_string(const FracIdeal& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.hnf.rows(); ++i) {
    os << (i ? ", " : "") << "(";
    for (std::size_t j = 0; j < a.hnf.cols(); ++j) os << (j ? "," : "") << a.hnf(i, j).get_str();
    os << ")";
  }
  os << "]";
  if (a.denominator != 1) os << "/" << a.denominator.get_str();
  return os.str();
}

FracIdeal lattice_from_rows(const std::vector<RationalVector>& rows) {
  if (rows.empty()) throw DomainError("empty generator list");
  const std::size_t n = rows.front().size();
  Integer den = 1;
  for (const auto& r : rows) {
    Integer d = common_denominator(r);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  ZMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational scaled = rows[i][j] * den;
      m(i, j) = scaled.get_num();
    }
  FracIdeal out{hermite_normal_form(m), den};
  Integer g = out.denominator;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.hnf(i, j).get_mpz_t());
  if (g != 1) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) out.hnf(i, j) /= g;
    out.denominator /= g;
  }
  return out;
}

FracIdeal unit_ideal(const NumberField& k) {
  return {ZMatrix::identity(static_cast<std::size_t>(k.degree())), 1};
}

FracIdeal ideal_from_generators(const NumberField& k, const std::vector<FieldElement>& gens) {
  std::vector<RationalVector> rows;
  const std::size_t n = static_cast<std::size_t>(k.degree());
  for (const auto& g : gens) {
    if (g.coords.size() != n) throw DomainError("generator has the wrong number of coordinates");
    if (g.is_zero()) continue;
    QMatrix m = k.multiplication_matrix(g);
    for (std::size_t i = 0; i < n; ++i) rows.push_back(m.row(i));
  }
  if (rows.empty()) throw DomainError("an ideal needs at least one nonzero generator");
  return lattice_from_rows(rows);
}

FracIdeal principal_ideal(const NumberField& k, const FieldElement& g) { return ideal_from_generators(k, {g}); }

FracIdeal multiply(const NumberField& k, const FracIdeal& a, const FracIdeal& b) {
  std::vector<RationalVector> rows;
  const auto ba = a.basis();
  const auto bb = b.basis();
  for (const auto& x : ba)
    for (const auto& y : bb) rows.push_back(k.mul(x, y).coords);
  return lattice_from_rows(rows);
}

FracIdeal invert(const NumberField& k, const FracIdeal& a) {
  const std::size_t n = static_cast<std::size_t>(k.degree());
  // x a_i = x M_{a_i}; the conditions x M_{a_i} in Z^n are pairings with the columns.
  std::vector<RationalVector> columns;
  for (const auto& ai : a.basis()) {
    QMatrix m = k.multiplication_matrix(ai);
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = m(i, j);
      columns.push_back(std::move(col));
    }
  }
  return dual_of_span(columns);
}

FracIdeal power(const NumberField& k, const FracIdeal& a, long e) {
  if (e < 0) return power(k, invert(k, a), -e);
  FracIdeal result = unit_ideal(k), base = a;
  for (; e; e >>= 1) {
    if (e & 1) result = multiply(k, result, base);
    if (e > 1) base = multiply(k, base, base);
  }
  return result;
}

Rational norm(const FracIdeal& a) {
  Integer dn;
  mpz_pow_ui(dn.get_mpz_t(), a.denominator.get_mpz_t(), static_cast<unsigned long>(a.degree()));
  Rational q(abs(determinant(a.hnf)), dn);
  q.canonicalize();
  return q;
}

bool contains(const FracIdeal& a, const FieldElement& x) {
  // Solve against the triangular basis; membership iff all coefficients are integers.
  const std::size_t n = a.hnf.rows();
  RationalVector rest = x.coords;
  for (auto& c : rest) c *= a.denominator;
  for (std::size_t i = 0; i < n; ++i) {
    Rational coef = rest[i] / Rational(a.hnf(i, i));
    if (coef.get_den() != 1) return false;
    for (std::size_t j = i; j < n; ++j) rest[j] -= coef * a.hnf(i, j);
  }
  return true;
}

bool is_integral(const FracIdeal& a) { return a.denominator == 1; }

bool is_module(const NumberField& k, const FracIdeal& a) {
  const std::size_t n = static_cast<std::size_t>(k.degree());
  for (const auto& x : a.basis())
    for (std::size_t j = 0; j < n; ++j) {
      FieldElement w = k.zero();
      w.coords[j] = 1;
      if (!contains(a, k.mul(x, w))) return false;
    }
  return true;
}

FracIdeal trace_dual(const NumberField& k, const FracIdeal& a) {
  std::vector<RationalVector> vectors;
  for (const auto& x : a.basis()) vectors.push_back(row_times(x.coords, k.trace_matrix()));
  return dual_of_span(vectors);
}

FracIdeal codifferent(const NumberField& k) { return trace_dual(k, unit_ideal(k)); }

FracIdeal different_ideal(const NumberField& k) {
  if (!k.has_power_basis())
    throw DomainError("the different is only available for monogenic (power-basis) presentations");
  Polynomial df = k.polynomial().derivative();
  RationalVector p(static_cast<std::size_t>(k.degree()));
  for (int i = 0; i < k.degree(); ++i) p[static_cast<std::size_t>(i)] = df.coeff(i);
  return principal_ideal(k, k.from_power_coords(p));
}

ArchimedeanPart uniform_arch(const NumberField& k, const Rational& value) {
  return {RationalVector(static_cast<std::size_t>(k.place_count()), value), std::nullopt};
}

Rational arch_norm(const NumberField& k, const ArchimedeanPart& a) {
  Rational r = 1;
  for (int v = 0; v < k.place_count(); ++v)
    r *= pow(a.scale[static_cast<std::size_t>(v)], k.places()[static_cast<std::size_t>(v)].local_degree());
  if (a.twist) r *= abs(k.norm(*a.twist));
  return r;
}

std::vector<Interval> arch_values(const NumberField& k, const ArchimedeanPart& a, long bits) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits + 16);
  std::vector<Interval> out;
  std::vector<ComplexInterval> tw;
  if (a.twist) tw = k.embed(*a.twist, bits + 16);
  for (std::size_t v = 0; v < a.scale.size(); ++v) {
    Interval s(a.scale[v], prec);
    if (a.twist) s = s * sqrt(tw[v].norm_sq());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<double> arch_values_double(const NumberField& k, const ArchimedeanPart& a) {
  std::vector<double> out;
  for (const auto& iv : arch_values(k, a, 64)) out.push_back(iv.mid_double());
  return out;
}

std::string to_string(const NumberField& k, const RepleteIdeal& a) {
  std::ostringstream os;
  os << to_string(a.finite) << " | ";
  for (std::size_t v = 0; v < a.arch.scale.size(); ++v) os << (v ? ", " : "") << a.arch.scale[v].get_str();
  if (a.arch.twist) os << " * |" << to_string(*a.arch.twist) << "|";
  (void)k;
  return os.str();
}

RepleteIdeal make_replete(const NumberField& k, FracIdeal finite, RationalVector scale) {
  if (scale.size() == 1 && k.place_count() > 1) scale.assign(static_cast<std::size_t>(k.place_count()), scale[0]);
  if (scale.size() != static_cast<std::size_t>(k.place_count()))
    throw DomainError("replete ideal needs one archimedean component per place (" +
                      std::to_string(k.place_count()) + ")");
  for (const auto& s : scale)
    if (s <= 0) throw DomainError("archimedean components must be positive");
  return {std::move(finite), {std::move(scale), std::nullopt}};
}

Rational replete_norm(const NumberField& k, const RepleteIdeal& a) { return norm(a.finite) * arch_norm(k, a.arch); }

RepleteIdeal replete_inverse(const NumberField& k, const RepleteIdeal& a) {
  RepleteIdeal r{invert(k, a.finite), a.arch};
  for (auto& s : r.arch.scale) s = 1 / s;
  if (r.arch.twist) r.arch.twist = k.inv(*r.arch.twist);
  return r;
}

RepleteIdeal replete_scale(const NumberField&, const RepleteIdeal& a, const Rational& t) {
  if (t <= 0) throw DomainError("scale factor must be positive");
  RepleteIdeal r = a;
  for (auto& s : r.arch.scale) s *= t;
  return r;
}

RepleteIdeal replete_mul_principal(const NumberField& k, const RepleteIdeal& a, const FieldElement& gamma) {
  if (gamma.is_zero()) throw DomainError("principal multiplier must be nonzero");
  RepleteIdeal r{multiply(k, principal_ideal(k, k.inv(gamma)), a.finite), a.arch};
  r.arch.twist = a.arch.twist ? k.mul(*a.arch.twist, gamma) : gamma;
  return r;
}

IdelePresentation trivial_idele(const NumberField& k) { return {{}, uniform_arch(k, 1)}; }

Rational idele_norm(const NumberField& k, const IdelePresentation& x) {
  Rational r = arch_norm(k, x.arch);
  for (const auto& e : x.finite) {
    if (e.generator.is_zero()) throw DomainError("idele edit generator must be nonzero");
    r *= pow(abs(k.norm(e.generator)), -e.exponent);
  }
  return r;
}

RepleteIdeal idele_to_replete(const NumberField& k, const IdelePresentation& x) {
  FracIdeal fin = unit_ideal(k);
  for (const auto& e : x.finite) {
    if (e.generator.is_zero()) throw DomainError("idele edit generator must be nonzero");
    fin = multiply(k, fin, power(k, principal_ideal(k, e.generator), -e.exponent));
  }
  for (const auto& s : x.arch.scale)
    if (s <= 0) throw DomainError("archimedean idele components must be positive");
  return {std::move(fin), x.arch};
}

IdelePresentation replete_to_idele(const NumberField& k, const RepleteIdeal& a, const FieldElement& generator) {
  if (principal_ideal(k, generator) != a.finite) throw DomainError("generator does not generate the finite part");
  IdelePresentation x{{}, a.arch};
  if (generator != k.one()) x.finite.push_back({generator, -1});
  return x;
}

}  // namespace replete
