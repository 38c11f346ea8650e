#include "replete/lattice.hpp"

#include "replete/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace replete {

namespace {

// Relative slack on enumeration radii and fast-path decisions. Candidates
// this close to a boundary are always sent through the exact path.
constexpr double kFastPathRelErr = 1e-12;
constexpr double kRadiusSlack = 1e-9;

std::vector<Interval> row_coordinates(const NumberField& k, const FieldElement& x, long bits) {
  std::vector<Interval> out;
  auto emb = k.embed(x, bits);
  for (std::size_t v = 0; v < emb.size(); ++v) {
    out.push_back(emb[v].re);
    if (!k.places()[v].is_real) out.push_back(emb[v].im);
  }
  return out;
}

double log2_of(const Integer& z) {
  if (z == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(std::abs(m)) + static_cast<double>(exp);
}

// Decides |σ_v(β)|^2 == q2 exactly at a complex place.
bool modulus_tie(const NumberField& k, const FieldElement& beta, int place, const Rational& q2, long cap_bits) {
  if (k.degree() == 2) return k.norm(beta) == q2;  // imaginary quadratic: |σ(β)|^2 = N(β)
  // |σ_v(β)|^2 = σ_v(β) conj(σ_v(β)) is an eigenvalue of M ⊗ M.
  const QMatrix m = k.multiplication_matrix(beta);
  const Polynomial s = characteristic_polynomial(kronecker(m, m));
  if (s(q2) != 0) return false;
  const Polynomial p = squarefree_part(s);
  const int d = p.degree();
  if (d <= 1) return true;
  Integer sumsq = 0;
  for (const auto& c : primitive_integer_coeffs(p)) sumsq += c * c;
  // Root separation of a squarefree integer polynomial (Mahler):
  // sep > sqrt(3) d^{-(d+2)/2} |P|_2^{1-d}.
  const double log2_sep = 0.5 * std::log2(3.0) - 0.5 * (d + 2) * std::log2(static_cast<double>(d)) -
                          (d - 1) * 0.5 * log2_of(sumsq) - 2.0;
  long bits = std::max<long>(64, static_cast<long>(std::ceil(-log2_sep)) + 16);
  while (true) {
    if (bits > cap_bits) throw PrecisionError("modulus tie certificate exceeded the precision cap");
    Interval m2 = k.embed(beta, bits, cap_bits)[static_cast<std::size_t>(place)].norm_sq();
    if (!m2.contains(q2)) return false;
    if (m2.log2_width() < log2_sep) return true;
    bits *= 2;
  }
}

struct RegionBounds {
  std::vector<double> lo, hi;
};

RegionBounds region_bounds(const NumberField& k, const H0Region& region) {
  RegionBounds b;
  for (const auto& iv : arch_values(k, region.bound, 64)) {
    b.lo.push_back(iv.lo_double());
    b.hi.push_back(iv.hi_double());
  }
  return b;
}

// Shared driver for counting and listing lattice points in a region.
class RegionScan {
 public:
  RegionScan(const NumberField& k, const FracIdeal& lattice, const H0Region& region, const EnumerationOptions& opts)
      : k_(k), lattice_(lattice), region_(region), opts_(opts), bounds_(region_bounds(k, region)) {
    if (region.bound.scale.size() != static_cast<std::size_t>(k.place_count()))
      throw DomainError("region needs one bound per archimedean place");
    for (const auto& s : region.bound.scale)
      if (s <= 0) throw DomainError("region bounds must be positive");
    MinkowskiLattice ml = minkowski_basis(k, lattice, 128);
    basis_ = ml.basis;
    emb_ = ml.rows_double();
    std::vector<std::vector<double>> weighted = emb_;
    for (auto& row : weighted) {
      std::size_t c = 0;
      for (int v = 0; v < k.place_count(); ++v) {
        const double w = 1.0 / bounds_.hi[static_cast<std::size_t>(v)];
        row[c++] *= w;
        if (!k.places()[static_cast<std::size_t>(v)].is_real) row[c++] *= w;
      }
    }
    transform_ = lll_reduce(weighted);
    reduced_ = std::move(weighted);
  }

  // Calls on_member(worker, original coordinates) for every member.
  template <class OnMember>
  void run(OnMember&& on_member) const {
    const int n = k_.degree();
    const double radius_sq = k_.place_count() * (1 + kRadiusSlack) + kRadiusSlack;
    LatticeEnumerator en(reduced_);
    en.run(radius_sq,
           [&](unsigned worker, std::span<const std::int64_t> x, double) {
             std::vector<std::int64_t> coords(static_cast<std::size_t>(n), 0);
             for (int i = 0; i < n; ++i) {
               if (x[static_cast<std::size_t>(i)] == 0) continue;
               for (int j = 0; j < n; ++j)
                 coords[static_cast<std::size_t>(j)] +=
                     x[static_cast<std::size_t>(i)] * transform_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
             }
             if (is_member(coords)) on_member(worker, coords);
           },
           opts_.node_budget, std::max(1u, opts_.threads));
  }

  FieldElement element(std::span<const std::int64_t> coords) const {
    FieldElement a = k_.zero();
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == 0) continue;
      a = a + Rational(static_cast<long>(coords[i])) * basis_[i];
    }
    return a;
  }

 private:
  bool is_member(std::span<const std::int64_t> coords) const {
    bool certain = true;
    std::size_t c = 0;
    for (int v = 0; v < k_.place_count(); ++v) {
      const bool real = k_.places()[static_cast<std::size_t>(v)].is_real;
      double re = 0, im = 0, mag = 0;
      for (std::size_t i = 0; i < coords.size(); ++i) {
        const double ki = static_cast<double>(coords[i]);
        re += ki * emb_[i][c];
        mag += std::abs(ki) * std::abs(emb_[i][c]);
        if (!real) {
          im += ki * emb_[i][c + 1];
          mag += std::abs(ki) * std::abs(emb_[i][c + 1]);
        }
      }
      c += real ? 1 : 2;
      const double err = kFastPathRelErr * mag + 1e-300;
      const double modulus = real ? std::abs(re) : std::hypot(re, im);
      if (modulus - err > bounds_.hi[static_cast<std::size_t>(v)] * (1 + kFastPathRelErr)) return false;
      if (modulus + err > bounds_.lo[static_cast<std::size_t>(v)] * (1 - kFastPathRelErr)) certain = false;
    }
    if (certain) return true;
    return exact_membership(k_, element(coords), region_, opts_.precision_cap);
  }

  const NumberField& k_;
  const FracIdeal& lattice_;
  const H0Region& region_;
  EnumerationOptions opts_;
  RegionBounds bounds_;
  std::vector<FieldElement> basis_;
  std::vector<std::vector<double>> emb_;
  std::vector<std::vector<double>> reduced_;
  std::vector<std::vector<std::int64_t>> transform_;
};

}  // namespace

std::vector<std::vector<double>> MinkowskiLattice::rows_double() const {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) {
    std::vector<double> d;
    for (const auto& iv : r) d.push_back(iv.mid_double());
    out.push_back(std::move(d));
  }
  return out;
}

Interval determinant(const std::vector<std::vector<Interval>>& input) {
  auto m = input;
  const std::size_t n = m.size();
  const mpfr_prec_t prec = n ? m[0][0].precision() : 64;
  Interval det(Rational(1), prec);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    double best = -1;
    for (std::size_t i = c; i < n; ++i) {
      double mag = std::abs(m[i][c].mid_double());
      if (!m[i][c].contains_zero() && mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (best < 0) throw PrecisionError("interval determinant: no pivot excludes zero");
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Interval f = m[i][c] / m[c][c];
      for (std::size_t j = c + 1; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
    }
  }
  return det;
}

MinkowskiLattice minkowski_basis(const NumberField& k, const FracIdeal& a, long bits) {
  MinkowskiLattice ml{a, a.basis(), {}, Interval(), Interval()};
  for (const auto& x : ml.basis) ml.rows.push_back(row_coordinates(k, x, bits));
  ml.covolume = abs(determinant(ml.rows));
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits + 16);
  Interval expected = sqrt(Interval(Rational(abs(k.discriminant())), prec)) * Interval(norm(a), prec) *
                      Interval(pow2(-k.complex_places()), prec);
  ml.expected_covolume = expected;
  if (!ml.covolume.overlaps(expected))
    throw PrecisionError("Minkowski covolume " + ml.covolume.to_string() + " disagrees with " + expected.to_string());
  return ml;
}

H0Region h0_region(const NumberField& k, const RepleteIdeal& a) {
  H0Region r{a.arch};
  for (auto& s : r.bound.scale) s = 1 / s;
  if (r.bound.twist) r.bound.twist = k.inv(*r.bound.twist);
  return r;
}

bool place_bound_holds(const NumberField& k, const FieldElement& beta, int place, const Rational& q, long cap_bits) {
  if (auto r = k.as_rational(beta)) return abs(*r) <= q;
  const bool real = k.places()[static_cast<std::size_t>(place)].is_real;
  const Rational q2 = q * q;
  bool tie_checked = false;
  for (long bits = 64;; bits *= 2) {
    if (bits > cap_bits) throw PrecisionError("membership undecided at the precision cap");
    const ComplexInterval z = k.embed(beta, bits, cap_bits)[static_cast<std::size_t>(place)];
    if (real) {
      // σ_v(β) = ±q would force β = ±q, excluded above, so refinement terminates.
      Interval m = abs(z.re);
      if (m.certainly_le(q)) return true;
      if (m.certainly_gt(q)) return false;
    } else {
      Interval m2 = z.norm_sq();
      if (m2.certainly_le(q2)) return true;
      if (m2.certainly_gt(q2)) return false;
      if (!tie_checked) {
        tie_checked = true;
        if (modulus_tie(k, beta, place, q2, cap_bits)) return true;
      }
    }
  }
}

bool exact_membership(const NumberField& k, const FieldElement& alpha, const H0Region& region, long cap_bits) {
  if (region.bound.scale.size() != static_cast<std::size_t>(k.place_count()))
    throw DomainError("region needs one bound per archimedean place");
  const FieldElement beta = region.bound.twist ? k.mul(alpha, k.inv(*region.bound.twist)) : alpha;
  for (int v = 0; v < k.place_count(); ++v)
    if (!place_bound_holds(k, beta, v, region.bound.scale[static_cast<std::size_t>(v)], cap_bits)) return false;
  return true;
}

std::uint64_t count_in_region(const NumberField& k, const FracIdeal& lattice, const H0Region& region,
                              const EnumerationOptions& opts) {
  RegionScan scan(k, lattice, region, opts);
  std::vector<std::uint64_t> per_worker(std::max(1u, opts.threads), 0);
  scan.run([&](unsigned w, std::span<const std::int64_t>) { ++per_worker[w]; });
  std::uint64_t total = 0;
  for (auto c : per_worker) total += c;
  return total;
}

std::vector<FieldElement> enumerate_in_region(const NumberField& k, const FracIdeal& lattice, const H0Region& region,
                                              std::size_t cap, const EnumerationOptions& opts) {
  RegionScan scan(k, lattice, region, opts);
  std::vector<std::vector<FieldElement>> per_worker(std::max(1u, opts.threads));
  std::atomic<std::size_t> found{0};
  scan.run([&](unsigned w, std::span<const std::int64_t> coords) {
    if (++found > cap) throw BudgetError("more than " + std::to_string(cap) + " elements in H0");
    per_worker[w].push_back(scan.element(coords));
  });
  std::vector<FieldElement> out;
  for (auto& v : per_worker)
    for (auto& e : v) out.push_back(std::move(e));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_h0(const NumberField& k, const RepleteIdeal& a, const EnumerationOptions& opts) {
  return count_in_region(k, a.finite, h0_region(k, a), opts);
}

std::vector<FieldElement> enumerate_h0(const NumberField& k, const RepleteIdeal& a, std::size_t cap,
                                       const EnumerationOptions& opts) {
  return enumerate_in_region(k, a.finite, h0_region(k, a), cap, opts);
}

std::optional<FieldElement> principal_generator(const NumberField& k, const FracIdeal& a,
                                                const EnumerationOptions& opts) {
  const Rational target = norm(a);
  MinkowskiLattice ml = minkowski_basis(k, a, 128);
  auto reduced = ml.rows_double();
  auto u = lll_reduce(reduced);
  LatticeEnumerator en(reduced);
  double radius_sq = 0;
  for (const auto& row : reduced) {
    double s = 0;
    for (double x : row) s += x * x;
    radius_sq = std::max(radius_sq, s);
  }
  const int n = k.degree();
  for (int round = 0; round < 24; ++round, radius_sq *= 4) {
    std::vector<std::pair<double, FieldElement>> hits;
    std::mutex mu;
    en.run(radius_sq,
           [&](unsigned, std::span<const std::int64_t> x, double len) {
             FieldElement e = k.zero();
             for (int i = 0; i < n; ++i) {
               std::int64_t c = 0;
               for (int j = 0; j < n; ++j) c += x[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
               if (c) e = e + Rational(static_cast<long>(c)) * ml.basis[static_cast<std::size_t>(i)];
             }
             if (e.is_zero() || abs(k.norm(e)) != target) return;
             std::lock_guard lock(mu);
             hits.emplace_back(len, std::move(e));
           },
           opts.node_budget, 1);
    if (!hits.empty()) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& h : hits) best = std::min(best, h.first);
      std::optional<FieldElement> pick;
      for (auto& h : hits)
        if (h.first <= best * (1 + 1e-9) && (!pick || *pick < h.second)) pick = h.second;
      return pick;
    }
  }
  return std::nullopt;
}

std::vector<std::vector<std::int64_t>> lll_reduce(std::vector<std::vector<double>>& b, double delta) {
  const std::size_t n = b.size();
  std::vector<std::vector<std::int64_t>> u(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  if (n < 2) return u;
  const std::size_t m = b[0].size();

  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0)), bstar(n, std::vector<double>(m));
  std::vector<double> bsq(n);
  auto dot = [m](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) s += x[i] * y[i];
    return s;
  };
  auto gram_schmidt = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      bstar[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], bstar[j]) / bsq[j];
        for (std::size_t c = 0; c < m; ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
      }
      bsq[i] = dot(bstar[i], bstar[i]);
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  for (long iter = 0; k < n; ++iter) {
    if (iter > 1'000'000) throw PrecisionError("LLL failed to converge");
    for (std::size_t jj = k; jj-- > 0;) {
      const double q = std::nearbyint(mu[k][jj]);
      if (q == 0) continue;
      if (std::abs(q) > 9.0e15) throw PrecisionError("LLL transform overflow");
      const auto qi = static_cast<std::int64_t>(q);
      for (std::size_t c = 0; c < m; ++c) b[k][c] -= q * b[jj][c];
      for (std::size_t c = 0; c < n; ++c) u[k][c] -= qi * u[jj][c];
      gram_schmidt();
    }
    if (bsq[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bsq[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return u;
}

LatticeEnumerator::LatticeEnumerator(std::vector<std::vector<double>> basis) : n_(static_cast<int>(basis.size())) {
  const std::size_t n = basis.size();
  mu_.assign(n, std::vector<double>(n, 0));
  bstar_sq_.assign(n, 0);
  std::vector<std::vector<double>> bstar = basis;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double d = 0;
      for (std::size_t c = 0; c < basis[i].size(); ++c) d += basis[i][c] * bstar[j][c];
      mu_[i][j] = d / bstar_sq_[j];
      for (std::size_t c = 0; c < basis[i].size(); ++c) bstar[i][c] -= mu_[i][j] * bstar[j][c];
    }
    double s = 0;
    for (double x : bstar[i]) s += x * x;
    if (!(s > 0)) throw DomainError("enumeration basis is degenerate");
    bstar_sq_[i] = s;
  }
}

double LatticeEnumerator::minimum_lower_bound() const {
  double m = std::numeric_limits<double>::infinity();
  for (double s : bstar_sq_) m = std::min(m, std::sqrt(s));
  return m;
}

std::uint64_t LatticeEnumerator::run(double radius_sq, const Visitor& visit, std::uint64_t budget,
                                     unsigned threads) const {
  const int n = n_;
  if (n == 0) return 0;
  const double tol = radius_sq * 1e-12;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mu;

  const std::size_t top = static_cast<std::size_t>(n - 1);
  const double top_half = std::sqrt(radius_sq / bstar_sq_[top]);
  const auto top_lo = static_cast<std::int64_t>(std::ceil(-top_half - 1e-9));
  const auto top_hi = static_cast<std::int64_t>(std::floor(top_half + 1e-9));

  auto worker = [&](unsigned w) {
    try {
      std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
      std::uint64_t local = 0;
      auto tick = [&] {
        if (++local == 4096) {
          if (nodes.fetch_add(local) + local > budget) throw BudgetError("enumeration node budget exceeded");
          if (stop.load(std::memory_order_relaxed)) throw BudgetError("enumeration aborted");
          local = 0;
        }
      };
      // Recursive descent below the top level.
      auto descend = [&](auto&& self, int level, double used) -> void {
        const std::size_t li = static_cast<std::size_t>(level);
        double center = 0;
        for (int j = level + 1; j < n; ++j) center -= mu_[static_cast<std::size_t>(j)][li] * static_cast<double>(x[static_cast<std::size_t>(j)]);
        const double rem = radius_sq - used;
        if (rem < -tol) return;
        const double half = std::sqrt(std::max(0.0, rem) / bstar_sq_[li]);
        const auto lo = static_cast<std::int64_t>(std::ceil(center - half - 1e-9));
        const auto hi = static_cast<std::int64_t>(std::floor(center + half + 1e-9));
        for (std::int64_t v = lo; v <= hi; ++v) {
          const double d = static_cast<double>(v) - center;
          const double next = used + d * d * bstar_sq_[li];
          if (next > radius_sq + tol) continue;
          tick();
          x[li] = v;
          if (level == 0) visit(w, x, next);
          else self(self, level - 1, next);
        }
        x[li] = 0;
      };
      for (std::int64_t v = top_lo + static_cast<std::int64_t>(w); v <= top_hi; v += static_cast<std::int64_t>(threads)) {
        const double next = static_cast<double>(v) * static_cast<double>(v) * bstar_sq_[top];
        if (next > radius_sq + tol) continue;
        tick();
        x[top] = v;
        if (n == 1) visit(w, x, next);
        else descend(descend, n - 2, next);
      }
      nodes.fetch_add(local);
    } catch (...) {
      stop = true;
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  if (nodes.load() > budget) throw BudgetError("enumeration node budget exceeded");
  return nodes.load();
}

}  // namespace replete
