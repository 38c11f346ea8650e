#pragma once

#include "replete/matrix.hpp"
#include "replete/number_field.hpp"

#include <optional>
#include <vector>

namespace replete {

// Fractional ideal (1/denominator) * L where L is the row lattice of `hnf`
// in integral-basis coordinates. The pair is canonical: hnf is in Hermite
// normal form and gcd(content(hnf), denominator) = 1, so equality of ideals
// is equality of representations.
struct FracIdeal {
  ZMatrix hnf;
  Integer denominator = 1;

  int degree() const { return static_cast<int>(hnf.rows()); }
  // Z-basis of the ideal as field elements.
  std::vector<FieldElement> basis() const;
  friend bool operator==(const FracIdeal&, const FracIdeal&) = default;
};

std::string to_string(const FracIdeal& a);

FracIdeal unit_ideal(const NumberField& k);
// O_K-module generated by `gens`; throws DomainError when all are zero.
FracIdeal ideal_from_generators(const NumberField& k, const std::vector<FieldElement>& gens);
FracIdeal principal_ideal(const NumberField& k, const FieldElement& g);
// Canonical form of the Z-lattice spanned by `rows` (rational coordinates, full rank).
FracIdeal lattice_from_rows(const std::vector<RationalVector>& rows);

FracIdeal multiply(const NumberField& k, const FracIdeal& a, const FracIdeal& b);
// {x in K : x a ⊆ O_K}
FracIdeal invert(const NumberField& k, const FracIdeal& a);
FracIdeal power(const NumberField& k, const FracIdeal& a, long e);
// |det hnf| / denominator^n
Rational norm(const FracIdeal& a);
bool contains(const FracIdeal& a, const FieldElement& x);
bool is_integral(const FracIdeal& a);
// Closure of the lattice under multiplication by every integral-basis element.
bool is_module(const NumberField& k, const FracIdeal& a);

// {x in K : Tr(x a) ⊆ Z} = a^{-1} D^{-1}.
FracIdeal trace_dual(const NumberField& k, const FracIdeal& a);
// The inverse different, as the trace dual of O_K.
FracIdeal codifferent(const NumberField& k);
// The different of a monogenic presentation: (f'(θ)). Throws DomainError
// unless the stored integral basis is the power basis.
FracIdeal different_ideal(const NumberField& k);

// Archimedean component of a replete ideal or idele: at place v the value is
// scale[v] * |twist|_v, with twist = 1 when absent. The twist keeps values
// such as |γ|_v for γ in K exact.
struct ArchimedeanPart {
  RationalVector scale;
  std::optional<FieldElement> twist;

  friend bool operator==(const ArchimedeanPart&, const ArchimedeanPart&) = default;
};

ArchimedeanPart uniform_arch(const NumberField& k, const Rational& value);
// Exact product over places of value_v^{f_v}.
Rational arch_norm(const NumberField& k, const ArchimedeanPart& a);
// Enclosures of scale[v] * |twist|_v.
std::vector<Interval> arch_values(const NumberField& k, const ArchimedeanPart& a, long bits = 64);
std::vector<double> arch_values_double(const NumberField& k, const ArchimedeanPart& a);

struct RepleteIdeal {
  FracIdeal finite;
  ArchimedeanPart arch;

  friend bool operator==(const RepleteIdeal&, const RepleteIdeal&) = default;
};

std::string to_string(const NumberField& k, const RepleteIdeal& a);

RepleteIdeal make_replete(const NumberField& k, FracIdeal finite, RationalVector scale);
// N(a_fin) * prod n_v^{f_v}
Rational replete_norm(const NumberField& k, const RepleteIdeal& a);
RepleteIdeal replete_inverse(const NumberField& k, const RepleteIdeal& a);
// Multiplies every n_v by t; the finite part is unchanged.
RepleteIdeal replete_scale(const NumberField& k, const RepleteIdeal& a, const Rational& t);
// Replete ideal of the idele γx when `a` is the replete ideal of x:
// finite part (γ)^{-1} a_fin, archimedean part n_v |γ|_v.
RepleteIdeal replete_mul_principal(const NumberField& k, const RepleteIdeal& a, const FieldElement& gamma);

// Idele given as a finite edit list against the everywhere-trivial idele:
// each entry sets the components at the primes dividing `generator` to
// generator^exponent. Archimedean components are |x_v|.
struct PrincipalEdit {
  FieldElement generator;
  long exponent = 0;
};

struct IdelePresentation {
  std::vector<PrincipalEdit> finite;
  ArchimedeanPart arch;
};

IdelePresentation trivial_idele(const NumberField& k);
// ||x||, computed from element norms of the edit generators.
Rational idele_norm(const NumberField& k, const IdelePresentation& x);
// prod p^{-v_p(x)} x (|x_v|)_v
RepleteIdeal idele_to_replete(const NumberField& k, const IdelePresentation& x);
// Inverse map for replete ideals whose finite part is principal with the
// given generator. Throws DomainError if (generator) != a.finite.
IdelePresentation replete_to_idele(const NumberField& k, const RepleteIdeal& a, const FieldElement& generator);

}  // namespace replete
