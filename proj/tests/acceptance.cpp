// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "oracle.hpp"

#include "replete/adelic.hpp"
#include "replete/harness.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace replete;

namespace {

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const char* title, const std::function<void(Criterion&)>& body) {
  Criterion c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail << " [exception: " << e.what() << "]";
  }
  if (!c.pass) ++failures;
  std::printf("%s criterion %d (%s):%s\n", c.pass ? "PASS" : "FAIL", id, title, c.detail.str().c_str());
  std::fflush(stdout);
}

NumberField from_poly(const std::vector<long>& c) {
  FieldSpec spec;
  for (long x : c) spec.poly.emplace_back(x);
  return NumberField::from_spec(spec);
}

ScanFamily uniform_family(const NumberField& k, const std::vector<Rational>& ts) {
  ScanFamily fam;
  fam.base = make_replete(k, unit_ideal(k), uniform_arch(k, 1).scale);
  for (const auto& t : ts) fam.schedule.push_back({t, 0});
  return fam;
}

std::vector<Rational> doubling(long t0, int k) {
  std::vector<Rational> out;
  for (int i = 0; i < k; ++i) out.emplace_back(t0 << i);
  return out;
}

struct Scans {
  std::vector<ScanRow> qi, q, q2;
};

Scans run_scans() {
  Scans s;
  const NumberField qi = NumberField::gaussian();
  const NumberField q = NumberField::rationals();
  const NumberField q2 = NumberField::quadratic(2);
  s.qi = scan_family(qi, uniform_family(qi, doubling(10, 6))).rows;
  s.q = scan_family(q, uniform_family(q, {10, 100, 1000, 10000})).rows;
  std::vector<Rational> t2 = doubling(3, 6);
  t2.emplace_back(100);
  s.q2 = scan_family(q2, uniform_family(q2, t2)).rows;
  return s;
}

const ScanRow& row_at(const std::vector<ScanRow>& rows, const Rational& norm) {
  for (const auto& r : rows)
    if (r.norm == norm) return r;
  throw std::runtime_error("scan row missing");
}

// Π over all complex embeddings, from the oracle's roots.
long double oracle_norm(const oracle::Field& f, const FieldElement& g) {
  const oracle::QVec p = oracle::to_power(f, oracle::QVec(g.coords.begin(), g.coords.end()));
  long double n = 1;
  for (int v = 0; v < f.r + f.s; ++v) {
    const auto z = oracle::embed_power(f, p, v);
    n *= v < f.r ? z.real() : std::norm(z);
  }
  return n;
}

long double det(std::vector<std::vector<long double>> m) {
  const std::size_t n = m.size();
  long double d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const long double x = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= x * m[c][j];
    }
  }
  return d;
}

std::string fmt(double x) { return format_g12(x); }

}  // namespace

int main() {
  const NumberField q = NumberField::rationals();
  const NumberField qi = NumberField::gaussian();
  const NumberField q2 = NumberField::quadratic(2);
  const double pi = std::numbers::pi;
  const Scans scans = run_scans();

  report(1, "leading constant", [&](Criterion& c) {
    const double rqi = row_at(scans.qi, 320 * 320).ratio;
    const double rq = row_at(scans.q, 1000).ratio;
    const double rq2 = row_at(scans.q2, 100 * 100).ratio;
    const double dqi = std::abs(rqi / pi - 1), dq = std::abs(rq / 2 - 1), dq2 = std::abs(rq2 / std::sqrt(2.0) - 1);
    c.detail << " Q(i) t=320 ratio " << fmt(rqi) << " dev " << fmt(dqi) << ";";
    c.detail << " Q t=1000 ratio " << fmt(rq) << " dev " << fmt(dq) << ";";
    c.detail << " Q(sqrt2) t=100 ratio " << fmt(rq2) << " dev " << fmt(dq2);
    c.require(dqi <= 0.01, "Q(i) within 1%");
    c.require(dq <= 0.001, "Q within 0.1%");
    c.require(dq2 <= 0.02, "Q(sqrt2) within 2%");
    c.require(estimate_constant(qi, scans.qi).deviation <= 0.01, "estimate_constant Q(i)");
  });

  report(2, "error exponent", [&](Criterion& c) {
    const ExponentFit fqi = fit_error_exponent(qi, scans.qi);
    const ExponentFit fq = fit_error_exponent(q, scans.q);
    std::vector<ScanRow> doubling_rows(scans.q2.begin(), scans.q2.end() - 1);
    const ExponentFit fq2 = fit_error_exponent(q2, doubling_rows);
    c.detail << " Q(i) slope " << fmt(fqi.slope) << " (C " << fmt(fqi.constant) << "); Q slope " << fmt(fq.slope)
             << "; Q(sqrt2) slope " << fmt(fq2.slope) << " (C " << fmt(fq2.constant) << ")";
    c.require(!fqi.saturated && fqi.slope <= 0.6, "Q(i) slope <= 0.6");
    c.require(fq.saturated || fq.slope <= 0.1, "Q slope <= 0.1");
    c.require(!fq2.saturated && fq2.slope <= 0.6, "Q(sqrt2) slope <= 0.6");
  });

  report(3, "Tate identity", [&](Criterion& c) {
    const SchwartzTestFunction f = gaussian_test_function(q, unit_ideal(q), 1);
    double worst = 0;
    for (Rational y : {Rational(1, 2), Rational(1), Rational(2), Rational(5)}) {
      const TateReport r = tate_check(q, f, IdelePresentation{{}, uniform_arch(q, y)}, 10, 1e-9);
      worst = std::max(worst, r.difference);
      c.require(r.pass, "Q y=" + y.get_str());
    }
    c.detail << " Q max diff " << fmt(worst) << ";";
    for (const FracIdeal& b : {unit_ideal(qi), principal_ideal(qi, qi.one() + qi.generator())}) {
      const TateReport r = tate_check(qi, gaussian_test_function(qi, b, 1), trivial_idele(qi), 10, 1e-8);
      c.detail << " Q(i) b=" << to_string(b) << " diff " << fmt(r.difference) << ";";
      c.require(r.pass, "Q(i)");
    }
    const IdelePresentation y{{}, ArchimedeanPart{{Rational(2), Rational(1, 2)}, std::nullopt}};
    const TateReport r = tate_check(q2, gaussian_test_function(q2, unit_ideal(q2), 1), y, 10, 1e-8);
    c.detail << " Q(sqrt2) y=(2,1/2) diff " << fmt(r.difference);
    c.require(r.pass, "Q(sqrt2)");
  });

  report(4, "exact-count oracles", [&](Criterion& c) {
    struct Case {
      std::vector<long> poly;
      long d;
    };
    const std::vector<Case> cases{{{0, 1}, 0}, {{}, -1}, {{}, 2},  {{}, -2}, {{}, 5},
                                  {{}, -7},    {{}, 13}, {{-2, 0, 0, 1}, 0}, {{-1, -3, 0, 1}, 0}, {{1, -1, 0, 1}, 0}};
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> coeff(-3, 3), bound(1, 20), den(1, 4);
    int instances = 0, agree = 0;
    for (const auto& cs : cases) {
      const NumberField k = cs.d == 0 ? from_poly(cs.poly) : NumberField::quadratic(cs.d);
      const oracle::Field of = cs.d == 0 ? oracle::make_field(cs.poly) : oracle::quadratic(cs.d);
      for (int trial = 0; trial < 6; ++trial) {
        RationalVector g, b;
        do {
          g.clear();
          b.clear();
          for (int i = 0; i < k.degree(); ++i) g.emplace_back(coeff(rng), den(rng));
          for (auto& x : g) x.canonicalize();
          for (int v = 0; v < k.place_count(); ++v)
            b.push_back(k.degree() <= 2 ? Rational(bound(rng)) : Rational(11 * bound(rng) + 5, 11));
        } while (k.element(g).is_zero() ||
                 oracle::box_points(oracle::scan_box(of, oracle::QVec(g.begin(), g.end()),
                                                     std::vector<mpq_class>(b.begin(), b.end()))) > 2e5);
        const auto lib = count_in_region(k, principal_ideal(k, k.element(g)), H0Region{ArchimedeanPart{b, std::nullopt}});
        const auto brute = oracle::count_principal(of, oracle::QVec(g.begin(), g.end()),
                                                   std::vector<mpq_class>(b.begin(), b.end()));
        ++instances;
        if (lib == brute.count && brute.ambiguous == 0) ++agree;
      }
    }
    c.detail << " random instances " << agree << "/" << instances << ";";
    c.require(instances >= 50 && agree == instances, "random instances agree");
    const auto h0 = [](const NumberField& k, const RationalVector& b) {
      return count_in_region(k, unit_ideal(k), H0Region{ArchimedeanPart{b, std::nullopt}});
    };
    const std::uint64_t a1 = h0(q, {10}), a2 = h0(qi, {10}), a3 = h0(qi, {20}), a4 = h0(qi, {40}), a5 = h0(q2, {3, 3});
    c.detail << " anchors " << a1 << " " << a2 << " " << a3 << " " << a4 << " " << a5;
    c.require(a1 == 21 && a2 == 317 && a3 == 1257 && a4 == 5025 && a5 == 15, "anchors");
    const oracle::Field oi = oracle::quadratic(-1);
    const bool brute_ok = oracle::count_principal(oracle::make_field({0, 1}), {1}, {10}).count == a1 &&
                          oracle::count_principal(oi, {1, 0}, {10}).count == a2 &&
                          oracle::count_principal(oi, {1, 0}, {20}).count == a3 &&
                          oracle::count_principal(oi, {1, 0}, {40}).count == a4 &&
                          oracle::count_principal(oracle::quadratic(2), {1, 0}, {3, 3}).count == a5;
    c.require(brute_ok, "anchors match brute force");
  });

  report(5, "invariance suite", [&](Criterion& c) {
    std::size_t rows = 0;
    bool parity = true;
    for (const auto* list : {&scans.qi, &scans.q, &scans.q2})
      for (const auto& r : *list) {
        ++rows;
        if (r.count > 0 && r.count % 2 == 0) parity = false;
      }
    c.detail << " parity on " << rows << " rows;";
    c.require(parity, "parity");
    const RepleteIdeal a = make_replete(qi, unit_ideal(qi), {Rational(10)});
    for (const FieldElement& g : {qi.generator(), qi.one() + qi.generator()}) {
      const InvarianceReport r = principal_invariance_check(qi, a, g);
      c.detail << " Q(i) gamma=" << to_string(g) << " " << r.count_before << "/" << r.count_after << ";";
      c.require(r.pass, "Q(i) principal invariance");
    }
    const RepleteIdeal b = make_replete(q2, unit_ideal(q2), {Rational(10), Rational(10)});
    const InvarianceReport r2 = principal_invariance_check(q2, b, q2.one() + q2.generator());
    c.detail << " Q(sqrt2) gamma=1+theta " << r2.count_before << "/" << r2.count_after << ";";
    c.require(r2.pass, "Q(sqrt2) principal invariance");

    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-4, 4), expo(-3, 3), sc(1, 12);
    const std::vector<std::pair<NumberField, oracle::Field>> fields{{qi, oracle::quadratic(-1)},
                                                                    {q2, oracle::quadratic(2)},
                                                                    {NumberField::quadratic(-3), oracle::quadratic(-3)},
                                                                    {from_poly({-2, 0, 0, 1}), oracle::make_field({-2, 0, 0, 1})}};
    int exact = 0;
    for (int i = 0; i < 20; ++i) {
      const auto& [k, of] = fields[static_cast<std::size_t>(i) % fields.size()];
      IdelePresentation x = trivial_idele(k);
      FieldElement g;
      do {
        RationalVector cs;
        for (int j = 0; j < k.degree(); ++j) cs.emplace_back(coeff(rng));
        g = k.element(cs);
      } while (g.is_zero());
      const long e = expo(rng);
      x.finite.push_back({g, e});
      long double expected = std::pow(std::abs(oracle_norm(of, g)), -static_cast<long double>(e));
      for (int v = 0; v < k.place_count(); ++v) {
        x.arch.scale[static_cast<std::size_t>(v)] = Rational(sc(rng), sc(rng));
        expected *= std::pow(static_cast<long double>(x.arch.scale[static_cast<std::size_t>(v)].get_d()),
                             k.places()[static_cast<std::size_t>(v)].local_degree());
      }
      const Rational lib = replete_norm(k, idele_to_replete(k, x));
      if (lib == idele_norm(k, x) && std::abs(lib.get_d() / static_cast<double>(expected) - 1) < 1e-9) ++exact;
    }
    c.detail << " replete norm identity " << exact << "/20";
    c.require(exact == 20, "replete norm identity");
  });

  report(6, "volume and measure identities", [&](Criterion& c) {
    std::vector<NumberField> presets{q, qi};
    for (long d : {2L, 3L, 5L, 6L, 7L, -2L, -3L, -5L, -7L, 13L, -11L}) presets.push_back(NumberField::quadratic(d));
    int vol_ok = 0;
    for (const auto& k : presets) {
      Interval expected(Rational(1), 128);
      for (int i = 0; i < k.real_places(); ++i) expected = expected * Interval(Rational(2), 128);
      for (int i = 0; i < k.complex_places(); ++i) expected = expected * Interval(Rational(2), 128) * Interval::pi(128);
      const Interval got = vol_B(k) * sqrt(Interval(Rational(abs(k.discriminant())), 128));
      vol_ok += got.overlaps(expected);
    }
    c.detail << " vol_B enclosures " << vol_ok << "/" << presets.size() << ";";
    c.require(vol_ok == static_cast<int>(presets.size()), "vol_B enclosures");

    std::mt19937 rng(31);
    std::uniform_int_distribution<int> coeff(-5, 5);
    const std::vector<std::pair<NumberField, oracle::Field>> fields{{qi, oracle::quadratic(-1)},
                                                                    {q2, oracle::quadratic(2)},
                                                                    {NumberField::quadratic(5), oracle::quadratic(5)},
                                                                    {from_poly({-2, 0, 0, 1}), oracle::make_field({-2, 0, 0, 1})}};
    int cov_ok = 0;
    for (int i = 0; i < 20; ++i) {
      const auto& [k, of] = fields[static_cast<std::size_t>(i) % fields.size()];
      std::vector<FieldElement> gens;
      for (int j = 0; j < 2; ++j) {
        RationalVector cs;
        for (int t = 0; t < k.degree(); ++t) cs.emplace_back(coeff(rng));
        gens.push_back(k.element(cs));
      }
      if (gens[0].is_zero() && gens[1].is_zero()) gens[0] = k.one();
      const FracIdeal a = ideal_from_generators(k, gens);
      const MinkowskiLattice ml = minkowski_basis(k, a);
      const Interval expected = Interval(pow2(-k.complex_places()) * norm(a), 128) *
                                sqrt(Interval(Rational(abs(k.discriminant())), 128));
      std::vector<std::vector<long double>> rows;
      for (const auto& b : a.basis()) {
        const auto p = oracle::to_power(of, oracle::QVec(b.coords.begin(), b.coords.end()));
        std::vector<long double> row;
        for (int v = 0; v < of.r + of.s; ++v) {
          const auto z = oracle::embed_power(of, p, v);
          row.push_back(z.real());
          if (v >= of.r) row.push_back(z.imag());
        }
        rows.push_back(row);
      }
      const long double direct = std::abs(det(rows));
      const bool ok = ml.covolume.overlaps(expected) &&
                      std::abs(static_cast<double>(direct) / expected.mid_double() - 1) < 1e-9;
      cov_ok += ok;
    }
    c.detail << " covolumes " << cov_ok << "/20;";
    c.require(cov_ok == 20, "covolume identity");

    std::vector<NumberField> monogenic{q, qi, q2, NumberField::quadratic(3), NumberField::quadratic(-2),
                                       NumberField::quadratic(-5), NumberField::quadratic(6), from_poly({-2, 0, 0, 1})};
    int diff_ok = 0;
    for (const auto& k : monogenic) diff_ok += norm(different_ideal(k)) == Rational(abs(k.discriminant()));
    c.detail << " different norms " << diff_ok << "/" << monogenic.size();
    c.require(diff_ok == static_cast<int>(monogenic.size()), "norm of the different");
  });

  report(7, "surface area", [&](Criterion& c) {
    const auto region = [](std::vector<RegionFactor> f) { return ArchRegion{std::move(f)}; };
    const SurfaceAreaReport s1 =
        surface_area(q, region({RegionFactor::interval(-1, 1)}), region({RegionFactor::interval(0, 1)}), default_t_list());
    c.detail << " Q slope " << (s1.exact_slope ? s1.exact_slope->get_str() : std::string("none")) << ";";
    c.require(s1.exact_slope && *s1.exact_slope == 2 && s1.monotone, "Q slope exactly 2");

    MonteCarloOptions mc;
    mc.samples = 1'000'000;
    mc.seed = 0;
    const SurfaceAreaReport s2 =
        surface_area(qi, region({RegionFactor::disc(0, 0, 1)}), region({RegionFactor::box(0, 1, 0, 1)}), default_t_list(), mc);
    c.detail << " Q(i) slope " << fmt(s2.slope) << " +- " << fmt(s2.slope_ci) << " (" << fmt(100 * s2.slope_ci / 8)
             << "%), quotients";
    for (double x : s2.quotient) c.detail << " " << fmt(x);
    c.require(std::abs(s2.slope - 8) <= s2.slope_ci, "8 inside the CI");
    c.require(s2.slope_ci <= 0.02 * 8, "CI within 2%");
    c.require(s2.monotone, "quotient monotone");
  });

  return failures == 0 ? 0 : 1;
}
