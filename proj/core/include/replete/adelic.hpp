#pragma once

#include "replete/ideal.hpp"
#include "replete/interval.hpp"
#include "replete/lattice.hpp"
#include "replete/number_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace replete {

// 2^r (2π)^s / sqrt|Δ|
Interval vol_B(const NumberField& k, long bits = 128);
// Self-dual volume of the closure of b at the finite places: N(b)^{-1} |Δ|^{-1/2}.
Interval self_dual_volume(const NumberField& k, const FracIdeal& b, long bits = 128);

// f = 1_b at the finite places times exp(-π λ_v x^2) at real places and
// exp(-2π λ_v |z|^2) at complex places.
struct SchwartzTestFunction {
  FracIdeal finite;
  RationalVector rate;
};

// Same rate at every place. Throws DomainError unless rate > 0.
SchwartzTestFunction gaussian_test_function(const NumberField& k, FracIdeal finite, const Rational& rate);
SchwartzTestFunction gaussian_test_function(const NumberField& k, FracIdeal finite, RationalVector rates);

// ψ_v(x) = exp(2πi sign x y) at real places and exp(2πi sign Tr_{C/R}(z w))
// at complex places, where Lebesgue measure is doubled.
struct CharacterConvention {
  int real_sign = 1;
};

// g(x) = exp(-c π λ |x|^2) maps to scale * exp(-c π dual_rate |w|^2),
// c = 1 real, 2 complex.
struct GaussianTransform {
  double scale = 1;
  Rational dual_rate = 1;
};

GaussianTransform gaussian_transform(bool real_place, const Rational& rate);

struct QuadratureSample {
  bool real_place = true;
  Rational rate;
  double point_re = 0;
  double point_im = 0;
  double closed_form = 0;
  double quadrature = 0;
};

struct FourierTables {
  CharacterConvention convention;
  std::vector<QuadratureSample> samples;
  double max_error = 0;
};

// Checks the closed-form Gaussian transforms against numerical quadrature
// of ∫ g(x) ψ(xw) dx at five points per place type. Throws ToleranceError
// when any sample disagrees by more than `tolerance`.
FourierTables fourier_tables(const CharacterConvention& convention = {}, const Rational& real_rate = 1,
                             const Rational& complex_rate = 1, double tolerance = 1e-8);

struct ThetaResult {
  double value = 0;
  // Rigorous bound on the omitted terms plus summation roundoff.
  double tail = 0;
  std::uint64_t terms = 0;
};

// Σ_{α in K} f(α y), summed over the lattice points with Gaussian exponent
// at most trunc_radius^2.
ThetaResult theta_lhs(const NumberField& k, const SchwartzTestFunction& f, const IdelePresentation& y,
                      double trunc_radius, const EnumerationOptions& opts = {});
// ||y||^{-1} Σ_{α in K} f^(α / y)
ThetaResult theta_rhs(const NumberField& k, const SchwartzTestFunction& f, const IdelePresentation& y,
                      double trunc_radius, const EnumerationOptions& opts = {});

struct TateReport {
  ThetaResult lhs;
  ThetaResult rhs;
  double difference = 0;
  double tolerance = 0;
  bool pass = false;
};

// Throws ToleranceError when the combined tail bounds already reach `tol`.
TateReport tate_check(const NumberField& k, const SchwartzTestFunction& f, const IdelePresentation& y,
                      double trunc_radius, double tol, const EnumerationOptions& opts = {});

// One archimedean factor of a region. Real places take an interval [a, b];
// complex places take a closed disc or an axis-parallel box.
struct RegionFactor {
  enum class Kind { Interval, Disc, Box };
  Kind kind = Kind::Interval;
  // Interval: {a, b}. Disc: {cx, cy, r}. Box: {x0, x1, y0, y1}.
  RationalVector params;

  static RegionFactor interval(Rational a, Rational b);
  static RegionFactor disc(Rational cx, Rational cy, Rational r);
  static RegionFactor box(Rational x0, Rational x1, Rational y0, Rational y1);
};

struct ArchRegion {
  std::vector<RegionFactor> factors;
};

// Throws DomainError unless every factor matches its place type and has
// nonempty interior.
void validate_region(const NumberField& k, const ArchRegion& region);
// Lebesgue volume of the region; exact when every factor is an interval.
double region_volume(const ArchRegion& region);

struct GrowthEstimate {
  Rational t;
  double value = 0;
  double ci = 0;                 // half-width at the configured confidence, 0 when exact
  std::optional<Rational> exact;
};

struct MonteCarloOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  double z = 2.5758293035489;  // two-sided 99%
  // Relative half-width beyond which the estimate is rejected.
  std::optional<double> max_relative_ci;
};

// vol(E ⊕ t(D - D)) - vol(E) for 0 < t <= 1.
GrowthEstimate minkowski_growth(const NumberField& k, const ArchRegion& e, const ArchRegion& d, const Rational& t,
                                const MonteCarloOptions& opts = {});

struct SurfaceAreaReport {
  std::vector<GrowthEstimate> growth;
  std::vector<double> quotient;  // growth / t
  std::vector<double> quotient_ci;
  double slope = 0;
  double slope_ci = 0;
  std::optional<Rational> exact_slope;
  bool monotone = false;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
};

// Slope of t -> vol(E ⊕ t(D - D)) at 0 by linear extrapolation of the
// growth quotient from the two smallest t. The quotient must not increase
// as t decreases; violations beyond the paired confidence interval raise
// ToleranceError.
SurfaceAreaReport surface_area(const NumberField& k, const ArchRegion& e, const ArchRegion& d,
                               const std::vector<Rational>& t_list, const MonteCarloOptions& opts = {});

std::vector<Rational> default_t_list();

}  // namespace replete
