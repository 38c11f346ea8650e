#pragma once

#include "replete/ideal.hpp"
#include "replete/interval.hpp"
#include "replete/number_field.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace replete {

// Image of a fractional ideal under K -> R^r x C^s, with complex places
// split into (re, im) coordinate pairs.
struct MinkowskiLattice {
  FracIdeal ideal;
  std::vector<FieldElement> basis;
  // rows[i][c]: coordinate c of basis element i.
  std::vector<std::vector<Interval>> rows;
  Interval covolume;           // |det rows|, as computed
  Interval expected_covolume;  // 2^{-s} sqrt|Δ| N(a)

  std::vector<std::vector<double>> rows_double() const;
};

// Throws PrecisionError if the computed and expected covolumes fail to
// overlap at the requested precision.
MinkowskiLattice minkowski_basis(const NumberField& k, const FracIdeal& a, long bits = 128);

// Determinant enclosure by interval Gaussian elimination.
Interval determinant(const std::vector<std::vector<Interval>>& m);

// {α : |α|_v <= b_v for every archimedean place}, b_v = scale_v |twist|_v.
struct H0Region {
  ArchimedeanPart bound;
};

// Bounds n_v^{-1} of H^0(a).
H0Region h0_region(const NumberField& k, const RepleteIdeal& a);

// Decides |α|_v <= b_v at every place exactly. Boundary points are members.
bool exact_membership(const NumberField& k, const FieldElement& alpha, const H0Region& region,
                      long cap_bits = NumberField::kDefaultPrecisionCap);

// Certified |σ_v(β)| <= q at one place, rational q >= 0.
bool place_bound_holds(const NumberField& k, const FieldElement& beta, int place, const Rational& q,
                       long cap_bits = NumberField::kDefaultPrecisionCap);

struct EnumerationOptions {
  std::uint64_t node_budget = 1'000'000'000;
  unsigned threads = 1;
  long precision_cap = NumberField::kDefaultPrecisionCap;
};

// |H^0(a)| = #{α in a_fin : |α|_v <= n_v^{-1} for all v}.
std::uint64_t count_h0(const NumberField& k, const RepleteIdeal& a, const EnumerationOptions& opts = {});
// Elements of H^0(a), sorted lexicographically on exact coordinates.
// Throws BudgetError when more than `cap` elements exist.
std::vector<FieldElement> enumerate_h0(const NumberField& k, const RepleteIdeal& a, std::size_t cap,
                                       const EnumerationOptions& opts = {});

// Same, for an explicit lattice and region.
std::uint64_t count_in_region(const NumberField& k, const FracIdeal& lattice, const H0Region& region,
                              const EnumerationOptions& opts = {});
std::vector<FieldElement> enumerate_in_region(const NumberField& k, const FracIdeal& lattice, const H0Region& region,
                                              std::size_t cap, const EnumerationOptions& opts = {});

// A generator of a principal fractional ideal, searched among short lattice
// vectors; nullopt if none turns up within the search limits.
std::optional<FieldElement> principal_generator(const NumberField& k, const FracIdeal& a,
                                                const EnumerationOptions& opts = {});

// Floating-point LLL (δ = 0.99) on the rows of `basis`. On return `basis`
// holds the reduced rows and the result U satisfies reduced = U * original.
std::vector<std::vector<std::int64_t>> lll_reduce(std::vector<std::vector<double>>& basis, double delta = 0.99);

// Depth-first Fincke-Pohst enumeration of all integer vectors x with
// |x * basis|^2 <= radius_sq. The visitor receives x in the coordinates of
// `basis` together with the squared length. Subtrees of the outermost
// coordinate are shared out over `threads` workers; the visitor is called
// concurrently from those workers with the worker index.
class LatticeEnumerator {
 public:
  using Visitor = std::function<void(unsigned worker, std::span<const std::int64_t> x, double norm_sq)>;

  explicit LatticeEnumerator(std::vector<std::vector<double>> basis);

  // Returns the number of tree nodes visited; throws BudgetError past `budget`.
  std::uint64_t run(double radius_sq, const Visitor& visit, std::uint64_t budget, unsigned threads) const;
  // Lower bound on the minimum of the lattice: min_i |b*_i|.
  double minimum_lower_bound() const;
  int dimension() const { return n_; }

 private:
  int n_;
  std::vector<std::vector<double>> mu_;
  std::vector<double> bstar_sq_;
};

}  // namespace replete
