#pragma once

#include "replete/interval.hpp"
#include "replete/matrix.hpp"
#include "replete/polynomial.hpp"
#include "replete/rational.hpp"
#include "replete/roots.hpp"

#include <complex>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace replete {

// Element of K in coordinates over the field's integral basis.
struct FieldElement {
  RationalVector coords;

  bool is_zero() const;
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  // Lexicographic on exact coordinates.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend FieldElement operator*(const Rational& c, const FieldElement& a);
};

std::string to_string(const FieldElement& a);

// Archimedean place: a real root or one root of a conjugate pair with
// positive imaginary part.
struct Place {
  bool is_real = true;
  RootEnclosure root;
  // Local degree f_v: 1 at real places, 2 at complex places.
  int local_degree() const { return is_real ? 1 : 2; }
};

struct FieldSpec {
  std::vector<Integer> poly;       // constant term first, monic
  std::optional<QMatrix> basis;    // rows over the power basis
};

class NumberField {
 public:
  static constexpr long kDefaultPrecisionCap = 4096;

  static NumberField from_spec(const FieldSpec& spec);
  static NumberField rationals();
  // Q(sqrt d) for squarefree d != 0, 1 with its ring of integers as basis.
  static NumberField quadratic(long d);
  static NumberField gaussian() { return quadratic(-1); }

  int degree() const { return n_; }
  int real_places() const { return r_; }
  int complex_places() const { return s_; }
  int place_count() const { return r_ + s_; }
  const Integer& discriminant() const { return disc_; }
  const Polynomial& polynomial() const { return poly_; }
  // Rows are the integral basis over the power basis 1, θ, ..., θ^{n-1}.
  const QMatrix& basis() const { return basis_; }
  bool has_power_basis() const { return power_basis_; }
  // Set when the degree is above 4 and irreducibility was taken on trust.
  bool irreducibility_asserted() const { return irreducibility_asserted_; }
  const std::vector<Place>& places() const { return places_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement generator() const;  // θ
  FieldElement from_integer(const Rational& q) const;
  FieldElement element(RationalVector coords) const;
  FieldElement from_power_coords(const RationalVector& p) const;
  RationalVector to_power_coords(const FieldElement& a) const;
  // Rational iff all power-basis coordinates beyond the constant vanish.
  std::optional<Rational> as_rational(const FieldElement& a) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const { return a + b; }
  FieldElement neg(const FieldElement& a) const { return -a; }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement pow(const FieldElement& a, long e) const;
  // Exact norm N_{K/Q}, computed as the resultant of the defining polynomial
  // with the power-basis representative of `a`.
  Rational norm(const FieldElement& a) const;
  Rational trace(const FieldElement& a) const;
  // Row i holds the coordinates of ω_i · a.
  QMatrix multiplication_matrix(const FieldElement& a) const;
  // Characteristic polynomial of multiplication by `a`.
  Polynomial characteristic_polynomial(const FieldElement& a) const;
  // Tr(ω_i ω_j).
  const QMatrix& trace_matrix() const { return trace_matrix_; }

  // Enclosures of a at every archimedean place, each of width <= 2^-bits.
  // Real places have an exact-zero imaginary part.
  std::vector<ComplexInterval> embed(const FieldElement& a, long bits,
                                     long cap_bits = kDefaultPrecisionCap) const;
  // Embedding of the integral basis element ω_i at place v, rounded to double.
  std::complex<double> basis_embedding(int i, int v) const {
    return basis_embeddings_[static_cast<std::size_t>(i * (r_ + s_) + v)];
  }
  // Isolation of the defining polynomial's roots at the requested width.
  RootIsolation roots(long bits) const;

 private:
  NumberField() = default;
  void initialise(const FieldSpec& spec);
  void check_irreducible();

  int n_ = 0, r_ = 0, s_ = 0;
  Polynomial poly_;
  QMatrix basis_;
  QMatrix basis_inv_;
  bool power_basis_ = true;
  bool irreducibility_asserted_ = false;
  Integer disc_;
  std::vector<std::vector<FieldElement>> mult_table_;
  RationalVector basis_traces_;
  QMatrix trace_matrix_;
  std::vector<Place> places_;
  std::vector<std::complex<double>> basis_embeddings_;
  std::string name_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

}  // namespace replete
