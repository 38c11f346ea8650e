#include "replete/adelic.hpp"

#include "replete/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>

namespace replete {

namespace {

constexpr double kPi = std::numbers::pi;

double to_double(const Rational& q) { return q.get_d(); }

// ∫ g over [-half, half]; callers pick half so the Gaussian factor is below 1e-40 outside.
double integrate_line(const std::function<double(double)>& g, double half) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -half, half, 12, 1e-13);
}

// The lattice of α with α y in the closure of b at every finite place.
FracIdeal shifted_ideal(const NumberField& k, const FracIdeal& b, const IdelePresentation& y) {
  FracIdeal a = b;
  for (const auto& edit : y.finite) {
    if (edit.exponent == 0) continue;
    a = multiply(k, a, power(k, principal_ideal(k, edit.generator), -edit.exponent));
  }
  return a;
}

// Σ_{α in lattice} exp(-π Q(α)) with Q(α) = Σ_v f_v weight_v |σ_v α|^2, over Q <= R^2,
// together with a bound on everything left out.
ThetaResult gaussian_sum(const NumberField& k, const FracIdeal& lattice, const std::vector<double>& weight,
                         double radius, long double prefactor, const EnumerationOptions& opts) {
  if (!(radius > 0)) throw DomainError("truncation radius must be positive");
  auto rows = minkowski_basis(k, lattice, 128).rows_double();
  for (auto& row : rows) {
    std::size_t c = 0;
    for (int v = 0; v < k.place_count(); ++v) {
      const bool real = k.places()[static_cast<std::size_t>(v)].is_real;
      const double w = std::sqrt((real ? 1.0 : 2.0) * weight[static_cast<std::size_t>(v)]);
      row[c++] *= w;
      if (!real) row[c++] *= w;
    }
  }
  lll_reduce(rows);
  LatticeEnumerator en(rows);
  const unsigned threads = std::max(1u, opts.threads);
  std::vector<long double> partial(threads, 0.0L);
  std::vector<std::uint64_t> counts(threads, 0);
  en.run(radius * radius,
         [&](unsigned w, std::span<const std::int64_t>, double q) {
           partial[w] += std::exp(-static_cast<long double>(kPi) * q);
           ++counts[w];
         },
         opts.node_budget, threads);
  long double sum = 0;
  std::uint64_t terms = 0;
  for (unsigned w = 0; w < threads; ++w) {
    sum += partial[w];
    terms += counts[w];
  }

  // Lattice points are at least mu apart, so at most (1 + 2ρ/mu)^n lie in
  // the ball of radius ρ. Shell j covers [ρ_j, ρ_j + h).
  const double mu = 0.99 * en.minimum_lower_bound();
  const int n = k.degree();
  const double h = 0.1;
  const double rho0 = radius * (1 - 1e-9);
  auto shell = [&](long j) {
    const double lo = rho0 + static_cast<double>(j) * h;
    const double hi = lo + h;
    return std::exp(n * std::log1p(2 * hi / mu) - kPi * lo * lo);
  };
  double tail = 0;
  for (long j = 0;; ++j) {
    if (j > 10'000'000) throw ToleranceError("theta tail bound did not converge");
    const double tj = shell(j);
    const double next = shell(j + 1);
    tail += tj;
    if (next <= 0.5 * tj) {
      tail += next * 2;
      break;
    }
  }
  const double roundoff = static_cast<double>(terms + 1) * 4 * std::numeric_limits<long double>::epsilon() *
                          static_cast<double>(sum);
  ThetaResult r;
  r.value = static_cast<double>(prefactor * sum);
  r.tail = static_cast<double>(prefactor) * (tail + roundoff) + 4 * std::numeric_limits<double>::epsilon() * r.value;
  r.terms = terms;
  return r;
}

void check_function(const NumberField& k, const SchwartzTestFunction& f) {
  if (f.rate.size() != static_cast<std::size_t>(k.place_count()))
    throw DomainError("test function needs one Gaussian rate per archimedean place");
  for (const auto& l : f.rate)
    if (l <= 0) throw DomainError("Gaussian rates must be positive");
  if (f.finite.degree() != k.degree()) throw DomainError("finite part has the wrong rank");
}

const FourierTables& validated_tables() {
  static const FourierTables tables = fourier_tables();
  return tables;
}

// Per-place shape of E ⊕ t(D - D): an interval, or a rectangle thickened by
// a disc of radius rho (rectangles and discs are the degenerate cases).
struct Shape {
  bool real = true;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0, rho = 0;

  bool contains(const double* p) const {
    if (real) return p[0] >= x0 && p[0] <= x1;
    const double dx = std::max({x0 - p[0], 0.0, p[0] - x1});
    const double dy = std::max({y0 - p[1], 0.0, p[1] - y1});
    return dx * dx + dy * dy <= rho * rho;
  }
  double lo(int c) const { return c == 0 ? x0 - rho : y0 - rho; }
  double hi(int c) const { return c == 0 ? x1 + rho : y1 + rho; }
};

Shape base_shape(const RegionFactor& f) {
  Shape s;
  const auto p = [&](std::size_t i) { return to_double(f.params[i]); };
  switch (f.kind) {
    case RegionFactor::Kind::Interval:
      s.x0 = p(0);
      s.x1 = p(1);
      break;
    case RegionFactor::Kind::Disc:
      s.real = false;
      s.x0 = s.x1 = p(0);
      s.y0 = s.y1 = p(1);
      s.rho = p(2);
      break;
    case RegionFactor::Kind::Box:
      s.real = false;
      s.x0 = p(0);
      s.x1 = p(1);
      s.y0 = p(2);
      s.y1 = p(3);
      break;
  }
  return s;
}

Shape grown_shape(const RegionFactor& e, const RegionFactor& d, double t) {
  Shape s = base_shape(e);
  const auto p = [&](std::size_t i) { return to_double(d.params[i]); };
  switch (d.kind) {
    case RegionFactor::Kind::Interval: {
      const double len = p(1) - p(0);
      s.x0 -= t * len;
      s.x1 += t * len;
      break;
    }
    case RegionFactor::Kind::Disc:
      s.rho += 2 * t * p(2);
      break;
    case RegionFactor::Kind::Box: {
      const double w = p(1) - p(0);
      const double h = p(3) - p(2);
      s.x0 -= t * w;
      s.x1 += t * w;
      s.y0 -= t * h;
      s.y1 += t * h;
      break;
    }
  }
  return s;
}

bool all_intervals(const ArchRegion& r) {
  return std::all_of(r.factors.begin(), r.factors.end(),
                     [](const RegionFactor& f) { return f.kind == RegionFactor::Kind::Interval; });
}

Rational exact_volume(const ArchRegion& e, const ArchRegion& d, const Rational& t) {
  Rational v = 1;
  for (std::size_t i = 0; i < e.factors.size(); ++i) {
    const auto& pe = e.factors[i].params;
    const auto& pd = d.factors[i].params;
    v *= (pe[1] - pe[0]) + 2 * t * (pd[1] - pd[0]);
  }
  return v;
}

// Paired Monte Carlo estimates of vol(E_{tD} \ E) for several t. Samples are
// drawn once in the unit cube and mapped into the bounding box of each E_{tD}.
struct GrowthSampler {
  std::vector<double> volume;          // bounding-box volume per t
  std::vector<std::uint64_t> hits;     // per t
  std::vector<std::vector<std::uint64_t>> joint;
  std::uint64_t samples = 0;

  GrowthSampler(const ArchRegion& e, const ArchRegion& d, const std::vector<Rational>& ts,
                const MonteCarloOptions& opts) {
    const std::size_t m = ts.size();
    std::vector<Shape> inner;
    for (const auto& f : e.factors) inner.push_back(base_shape(f));
    std::vector<std::vector<Shape>> outer(m);
    std::vector<std::vector<double>> lo(m), span(m);
    volume.assign(m, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t v = 0; v < e.factors.size(); ++v) {
        Shape s = grown_shape(e.factors[v], d.factors[v], to_double(ts[j]));
        for (int c = 0; c < (s.real ? 1 : 2); ++c) {
          lo[j].push_back(s.lo(c));
          span[j].push_back(s.hi(c) - s.lo(c));
          volume[j] *= s.hi(c) - s.lo(c);
        }
        outer[j].push_back(s);
      }
    }
    const std::size_t dim = lo.empty() ? 0 : lo[0].size();
    hits.assign(m, 0);
    joint.assign(m, std::vector<std::uint64_t>(m, 0));
    samples = opts.samples;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> u(dim), x(dim);
    std::vector<char> hit(m);
    for (std::uint64_t i = 0; i < samples; ++i) {
      for (auto& c : u) c = unit(rng);
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t c = 0; c < dim; ++c) x[c] = lo[j][c] + u[c] * span[j][c];
        bool in_outer = true, in_inner = true;
        std::size_t c = 0;
        for (std::size_t v = 0; v < inner.size(); ++v) {
          in_outer = in_outer && outer[j][v].contains(&x[c]);
          in_inner = in_inner && inner[v].contains(&x[c]);
          c += inner[v].real ? 1 : 2;
        }
        hit[j] = in_outer && !in_inner;
        if (hit[j]) ++hits[j];
      }
      for (std::size_t a = 0; a < m; ++a)
        if (hit[a])
          for (std::size_t b = a; b < m; ++b)
            if (hit[b]) ++joint[a][b];
    }
  }

  double estimate(std::size_t j) const { return volume[j] * static_cast<double>(hits[j]) / static_cast<double>(samples); }

  // Mean and z-scaled standard error of Σ_j coeff[j] * volume[j] * hit_j.
  std::pair<double, double> combination(const std::vector<double>& coeff, double z) const {
    const double n = static_cast<double>(samples);
    double mean = 0, second = 0;
    for (std::size_t a = 0; a < coeff.size(); ++a) {
      const double ca = coeff[a] * volume[a];
      mean += ca * static_cast<double>(hits[a]) / n;
      for (std::size_t b = 0; b < coeff.size(); ++b) {
        const double cb = coeff[b] * volume[b];
        const auto both = a <= b ? joint[a][b] : joint[b][a];
        second += ca * cb * static_cast<double>(both) / n;
      }
    }
    const double var = std::max(0.0, second - mean * mean);
    return {mean, z * std::sqrt(var / (n - 1))};
  }
};

void check_region_pair(const NumberField& k, const ArchRegion& e, const ArchRegion& d) {
  validate_region(k, e);
  validate_region(k, d);
}

}  // namespace

Interval vol_B(const NumberField& k, long bits) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits);
  Interval v(pow2(k.real_places() + k.complex_places()), prec);
  for (int i = 0; i < k.complex_places(); ++i) v = v * Interval::pi(prec);
  return v / sqrt(Interval(Rational(abs(k.discriminant())), prec));
}

Interval self_dual_volume(const NumberField& k, const FracIdeal& b, long bits) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits);
  return Interval(Rational(1), prec) /
         (Interval(norm(b), prec) * sqrt(Interval(Rational(abs(k.discriminant())), prec)));
}

SchwartzTestFunction gaussian_test_function(const NumberField& k, FracIdeal finite, const Rational& rate) {
  return gaussian_test_function(k, std::move(finite), RationalVector(static_cast<std::size_t>(k.place_count()), rate));
}

SchwartzTestFunction gaussian_test_function(const NumberField& k, FracIdeal finite, RationalVector rates) {
  SchwartzTestFunction f{std::move(finite), std::move(rates)};
  check_function(k, f);
  return f;
}

GaussianTransform gaussian_transform(bool real_place, const Rational& rate) {
  if (rate <= 0) throw DomainError("Gaussian rate must be positive");
  GaussianTransform g;
  g.dual_rate = 1 / rate;
  g.scale = real_place ? 1.0 / std::sqrt(to_double(rate)) : to_double(1 / rate);
  return g;
}

FourierTables fourier_tables(const CharacterConvention& convention, const Rational& real_rate,
                             const Rational& complex_rate, double tolerance) {
  if (convention.real_sign != 1 && convention.real_sign != -1) throw DomainError("character sign must be +1 or -1");
  FourierTables tables;
  tables.convention = convention;
  const double sign = convention.real_sign;

  {
    const double lam = to_double(real_rate);
    const double half = 6 / std::sqrt(lam);
    const GaussianTransform g = gaussian_transform(true, real_rate);
    for (double w : {0.0, 0.25, 0.5, 1.0, 1.5}) {
      const double re = integrate_line([&](double x) { return std::exp(-kPi * lam * x * x) * std::cos(2 * kPi * sign * x * w); }, half);
      const double im = integrate_line([&](double x) { return std::exp(-kPi * lam * x * x) * std::sin(2 * kPi * sign * x * w); }, half);
      QuadratureSample s{true, real_rate, w, 0, g.scale * std::exp(-kPi * w * w * to_double(g.dual_rate)), re};
      tables.max_error = std::max({tables.max_error, std::abs(s.closed_form - re), std::abs(im)});
      tables.samples.push_back(s);
    }
  }
  {
    // ψ(z w) = exp(2πi Tr(z w)), Tr(z w) = 2 Re(z w), measure 2 dx dy.
    const double lam = to_double(complex_rate);
    const double half = 4.5 / std::sqrt(lam);
    const GaussianTransform g = gaussian_transform(false, complex_rate);
    const std::array<std::pair<double, double>, 5> points{{{0, 0}, {0.25, 0}, {0, 0.3}, {0.2, -0.4}, {0.5, 0.5}}};
    for (const auto& [a, b] : points) {
      auto phase = [&](double x, double y) { return 2 * kPi * sign * 2 * (x * a - y * b); };
      const double re = integrate_line([&](double y) {
        return integrate_line([&](double x) {
          return 2 * std::exp(-2 * kPi * lam * (x * x + y * y)) * std::cos(phase(x, y));
        }, half);
      }, half);
      const double im = integrate_line([&](double y) {
        return integrate_line([&](double x) {
          return 2 * std::exp(-2 * kPi * lam * (x * x + y * y)) * std::sin(phase(x, y));
        }, half);
      }, half);
      QuadratureSample s{false, complex_rate, a, b,
                         g.scale * std::exp(-2 * kPi * (a * a + b * b) * to_double(g.dual_rate)), re};
      tables.max_error = std::max({tables.max_error, std::abs(s.closed_form - re), std::abs(im)});
      tables.samples.push_back(s);
    }
  }
  if (!(tables.max_error <= tolerance))
    throw ToleranceError("Fourier table disagrees with quadrature by " + std::to_string(tables.max_error));
  return tables;
}

ThetaResult theta_lhs(const NumberField& k, const SchwartzTestFunction& f, const IdelePresentation& y,
                      double trunc_radius, const EnumerationOptions& opts) {
  check_function(k, f);
  const auto yv = arch_values_double(k, y.arch);
  std::vector<double> weight;
  for (std::size_t v = 0; v < yv.size(); ++v) weight.push_back(to_double(f.rate[v]) * yv[v] * yv[v]);
  return gaussian_sum(k, shifted_ideal(k, f.finite, y), weight, trunc_radius, 1.0L, opts);
}

ThetaResult theta_rhs(const NumberField& k, const SchwartzTestFunction& f, const IdelePresentation& y,
                      double trunc_radius, const EnumerationOptions& opts) {
  check_function(k, f);
  validated_tables();
  const auto yv = arch_values_double(k, y.arch);
  std::vector<double> weight;
  long double prefactor = self_dual_volume(k, f.finite, 128).mid_double();
  for (std::size_t v = 0; v < yv.size(); ++v) {
    const GaussianTransform g = gaussian_transform(k.places()[v].is_real, f.rate[v]);
    weight.push_back(to_double(g.dual_rate) / (yv[v] * yv[v]));
    prefactor *= g.scale;
  }
  prefactor /= to_double(idele_norm(k, y));
  const FracIdeal dual = trace_dual(k, shifted_ideal(k, f.finite, y));
  return gaussian_sum(k, dual, weight, trunc_radius, prefactor, opts);
}

TateReport tate_check(const NumberField& k, const SchwartzTestFunction& f, const IdelePresentation& y,
                      double trunc_radius, double tol, const EnumerationOptions& opts) {
  TateReport r;
  r.lhs = theta_lhs(k, f, y, trunc_radius, opts);
  r.rhs = theta_rhs(k, f, y, trunc_radius, opts);
  r.tolerance = tol;
  if (!(r.lhs.tail + r.rhs.tail < tol))
    throw ToleranceError("tail bounds " + std::to_string(r.lhs.tail + r.rhs.tail) + " do not fit under tolerance");
  r.difference = std::abs(r.lhs.value - r.rhs.value);
  r.pass = r.difference <= tol;
  return r;
}

RegionFactor RegionFactor::interval(Rational a, Rational b) {
  return {Kind::Interval, {std::move(a), std::move(b)}};
}

RegionFactor RegionFactor::disc(Rational cx, Rational cy, Rational r) {
  return {Kind::Disc, {std::move(cx), std::move(cy), std::move(r)}};
}

RegionFactor RegionFactor::box(Rational x0, Rational x1, Rational y0, Rational y1) {
  return {Kind::Box, {std::move(x0), std::move(x1), std::move(y0), std::move(y1)}};
}

void validate_region(const NumberField& k, const ArchRegion& region) {
  if (region.factors.size() != static_cast<std::size_t>(k.place_count()))
    throw DomainError("region needs one factor per archimedean place");
  for (std::size_t v = 0; v < region.factors.size(); ++v) {
    const auto& f = region.factors[v];
    const bool real = k.places()[v].is_real;
    switch (f.kind) {
      case RegionFactor::Kind::Interval:
        if (!real) throw DomainError("interval factor at a complex place");
        if (f.params.size() != 2 || !(f.params[0] < f.params[1])) throw DomainError("interval needs a < b");
        break;
      case RegionFactor::Kind::Disc:
        if (real) throw DomainError("disc factor at a real place");
        if (f.params.size() != 3 || f.params[2] <= 0) throw DomainError("disc needs a positive radius");
        break;
      case RegionFactor::Kind::Box:
        if (real) throw DomainError("box factor at a real place");
        if (f.params.size() != 4 || !(f.params[0] < f.params[1]) || !(f.params[2] < f.params[3]))
          throw DomainError("box needs x0 < x1 and y0 < y1");
        break;
    }
  }
}

double region_volume(const ArchRegion& region) {
  double v = 1;
  for (const auto& f : region.factors) {
    const auto p = [&](std::size_t i) { return to_double(f.params[i]); };
    switch (f.kind) {
      case RegionFactor::Kind::Interval: v *= p(1) - p(0); break;
      case RegionFactor::Kind::Disc: v *= kPi * p(2) * p(2); break;
      case RegionFactor::Kind::Box: v *= (p(1) - p(0)) * (p(3) - p(2)); break;
    }
  }
  return v;
}

GrowthEstimate minkowski_growth(const NumberField& k, const ArchRegion& e, const ArchRegion& d, const Rational& t,
                                const MonteCarloOptions& opts) {
  check_region_pair(k, e, d);
  if (t <= 0 || t > 1) throw DomainError("growth parameter t must lie in (0, 1]");
  GrowthEstimate g;
  g.t = t;
  if (all_intervals(e) && all_intervals(d)) {
    g.exact = exact_volume(e, d, t) - exact_volume(e, d, 0);
    g.value = to_double(*g.exact);
    return g;
  }
  if (opts.samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  GrowthSampler sampler(e, d, {t}, opts);
  std::tie(g.value, g.ci) = sampler.combination({1.0}, opts.z);
  if (opts.max_relative_ci && g.ci > *opts.max_relative_ci * std::abs(g.value))
    throw ToleranceError("Monte Carlo confidence interval wider than requested");
  return g;
}

SurfaceAreaReport surface_area(const NumberField& k, const ArchRegion& e, const ArchRegion& d,
                               const std::vector<Rational>& t_list, const MonteCarloOptions& opts) {
  check_region_pair(k, e, d);
  std::vector<Rational> ts = t_list;
  std::sort(ts.begin(), ts.end(), [](const Rational& a, const Rational& b) { return a > b; });
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  if (ts.size() < 2) throw DomainError("surface area needs at least two distinct t values");
  for (const auto& t : ts)
    if (t <= 0 || t > 1) throw DomainError("growth parameter t must lie in (0, 1]");

  SurfaceAreaReport rep;
  rep.seed = opts.seed;
  const std::size_t m = ts.size();
  const Rational ta = ts[m - 1], tb = ts[m - 2];
  const Rational ca = tb / (tb - ta), cb = -ta / (tb - ta);

  if (all_intervals(e) && all_intervals(d)) {
    std::vector<Rational> q;
    for (const auto& t : ts) {
      GrowthEstimate g = minkowski_growth(k, e, d, t, opts);
      q.push_back(*g.exact / t);
      rep.quotient.push_back(to_double(q.back()));
      rep.quotient_ci.push_back(0);
      rep.growth.push_back(std::move(g));
    }
    rep.exact_slope = ca * q[m - 1] + cb * q[m - 2];
    rep.slope = to_double(*rep.exact_slope);
    rep.monotone = true;
    for (std::size_t j = 0; j + 1 < m; ++j)
      if (q[j + 1] > q[j]) rep.monotone = false;
  } else {
    if (opts.samples < 2) throw DomainError("Monte Carlo needs at least two samples");
    rep.samples = opts.samples;
    GrowthSampler sampler(e, d, ts, opts);
    for (std::size_t j = 0; j < m; ++j) {
      GrowthEstimate g;
      g.t = ts[j];
      std::vector<double> coeff(m, 0.0);
      coeff[j] = 1.0;
      std::tie(g.value, g.ci) = sampler.combination(coeff, opts.z);
      rep.quotient.push_back(g.value / to_double(ts[j]));
      rep.quotient_ci.push_back(g.ci / to_double(ts[j]));
      rep.growth.push_back(std::move(g));
    }
    std::vector<double> coeff(m, 0.0);
    coeff[m - 1] = to_double(ca / ta);
    coeff[m - 2] = to_double(cb / tb);
    std::tie(rep.slope, rep.slope_ci) = sampler.combination(coeff, opts.z);
    rep.monotone = true;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      std::vector<double> diff(m, 0.0);
      diff[j + 1] = 1.0 / to_double(ts[j + 1]);
      diff[j] = -1.0 / to_double(ts[j]);
      const auto [delta, ci] = sampler.combination(diff, opts.z);
      if (delta > ci) rep.monotone = false;
    }
    if (opts.max_relative_ci && rep.slope_ci > *opts.max_relative_ci * std::abs(rep.slope))
      throw ToleranceError("Monte Carlo confidence interval wider than requested");
  }
  if (!rep.monotone) throw ToleranceError("growth quotient is not monotone in t");
  return rep;
}

std::vector<Rational> default_t_list() {
  return {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16)};
}

}  // namespace replete
