#include "doctest.h"
#include "oracle.hpp"

#include "replete/adelic.hpp"
#include "replete/errors.hpp"
#include "replete/harness.hpp"

#include <cmath>
#include <sstream>

using namespace replete;

namespace {

ScanFamily uniform_family(const NumberField& k, std::vector<long> ts) {
  ScanFamily fam;
  fam.base = make_replete(k, unit_ideal(k), RationalVector(static_cast<std::size_t>(k.place_count()), Rational(1)));
  for (long t : ts) fam.schedule.push_back({Rational(t), 0});
  return fam;
}

std::uint64_t lattice_points_in_disc(long r) {
  std::uint64_t c = 0;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b) c += a * a + b * b <= r * r;
  return c;
}

std::vector<ScanRow> synthetic_rows(std::vector<std::pair<long, double>> norm_error) {
  std::vector<ScanRow> rows;
  long i = 0;
  for (auto [n, e] : norm_error) {
    ScanRow r;
    r.index = i++;
    r.norm = n;
    r.error = e;
    r.ratio = 1;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("scan_family examples") {
  const NumberField qi = NumberField::gaussian();
  const ScanResult a = scan_family(qi, uniform_family(qi, {10, 20, 40}));
  REQUIRE(a.rows.size() == 3);
  CHECK_FALSE(a.incomplete.has_value());
  const long radii[] = {10, 20, 40};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.rows[i].count == lattice_points_in_disc(radii[i]));
    CHECK(a.rows[i].norm == radii[i] * radii[i]);
    CHECK(a.rows[i].index == static_cast<long>(i));
    CHECK(a.rows[i].count % 2 == 1);
  }
  CHECK(a.rows[0].count == 317);
  CHECK(a.rows[1].count == 1257);
  CHECK(a.rows[2].count == 5025);

  const NumberField q = NumberField::rationals();
  const ScanResult b = scan_family(q, uniform_family(q, {10, 100, 1000}));
  REQUIRE(b.rows.size() == 3);
  CHECK(b.rows[0].count == 21);
  CHECK(b.rows[1].count == 201);
  CHECK(b.rows[2].count == 2001);
  for (const auto& r : b.rows) {
    CHECK(r.error == 1);
    CHECK(r.leading == doctest::Approx(2 * r.norm.get_d()));
  }

  const NumberField q2 = NumberField::quadratic(2);
  const ScanResult c = scan_family(q2, uniform_family(q2, {3}));
  REQUIRE(c.rows.size() == 1);
  const auto brute = oracle::count_principal(oracle::quadratic(2), {1, 0}, {3, 3});
  CHECK(c.rows[0].count == brute.count);
  CHECK(c.rows[0].count == 15);
  CHECK(std::abs(c.rows[0].leading - 9 * std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(c.rows[0].error - 2.27) < 0.01);
}

TEST_CASE("columns are mutually consistent") {
  const NumberField k = NumberField::quadratic(-3);
  const ScanResult s = scan_family(k, uniform_family(k, {3, 5, 8, 13}));
  const double vol = vol_B(k).mid_double();
  for (const auto& r : s.rows) {
    CHECK(r.leading == doctest::Approx(vol * r.norm.get_d()).epsilon(1e-11));
    CHECK(r.error == doctest::Approx(static_cast<double>(r.count) - r.leading));
    CHECK(r.ratio == doctest::Approx(static_cast<double>(r.count) / r.norm.get_d()));
    CHECK(r.count % 2 == 1);
  }
}

TEST_CASE("finite power schedules") {
  const NumberField qi = NumberField::gaussian();
  ScanFamily fam = uniform_family(qi, {});
  fam.base = make_replete(qi, unit_ideal(qi), {Rational(10)});
  fam.schedule = {{1, 0}, {1, 2}, {2, 2}};
  fam.step = principal_ideal(qi, qi.one() + qi.generator());
  const ScanResult s = scan_family(qi, fam);
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[1].norm == 400);
  CHECK(s.rows[1].count == lattice_points_in_disc(20));
  CHECK(s.rows[2].count == lattice_points_in_disc(40));

  fam.step.reset();
  CHECK_THROWS_AS(scan_family(qi, fam), DomainError);
  CHECK_THROWS_AS(scan_family(qi, uniform_family(qi, {10, 10})), DomainError);
  CHECK_THROWS_AS(scan_family(qi, uniform_family(qi, {20, 10})), DomainError);
}

TEST_CASE("geometric schedules") {
  const auto s = geometric_schedule(10, 2, 5);
  REQUIRE(s.size() == 5);
  CHECK(s[4].scale == 160);
  CHECK(s[0].power == 0);
  CHECK(geometric_schedule(Rational(1, 2), Rational(3, 2), 3)[2].scale == Rational(9, 8));
  CHECK_THROWS_AS(geometric_schedule(0, 2, 3), DomainError);
  CHECK_THROWS_AS(geometric_schedule(1, 1, 3), DomainError);
  CHECK_THROWS_AS(geometric_schedule(1, 2, 0), DomainError);
}

TEST_CASE("scan results do not depend on parallelism") {
  const NumberField q2 = NumberField::quadratic(2);
  ScanFamily fam = uniform_family(q2, {});
  fam.schedule = geometric_schedule(3, 2, 5);
  EnumerationOptions one, many;
  many.threads = 4;
  const ScanResult a = scan_family(q2, fam, one);
  const ScanResult b = scan_family(q2, fam, many);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].count == b.rows[i].count);
    CHECK(a.rows[i].error == b.rows[i].error);
  }
  std::ostringstream ca, cb;
  emit_csv(a.rows, ca);
  emit_csv(b.rows, cb);
  CHECK(ca.str() == cb.str());
}

TEST_CASE("budget exhaustion returns a partial scan") {
  const NumberField qi = NumberField::gaussian();
  EnumerationOptions opts;
  opts.node_budget = 20'000;
  for (unsigned threads : {1u, 3u}) {
    opts.threads = threads;
    const ScanResult s = scan_family(qi, uniform_family(qi, {10, 20, 400, 800}), opts);
    CHECK(s.rows.size() == 2);
    REQUIRE(s.incomplete.has_value());
    CHECK(s.incomplete->find("point 2") == 0);
  }
}

TEST_CASE("estimate_constant examples") {
  const NumberField q = NumberField::rationals();
  const ConstantEstimate c = estimate_constant(q, scan_family(q, uniform_family(q, {10, 100, 1000})).rows);
  CHECK(c.c_hat == doctest::Approx(2.001));
  CHECK(c.deviation < 1e-3);
  CHECK(c.vol_b == doctest::Approx(2.0));

  const NumberField qi = NumberField::gaussian();
  const ConstantEstimate ci = estimate_constant(qi, scan_family(qi, uniform_family(qi, {50, 100, 200})).rows);
  CHECK(ci.deviation < 0.01);
  CHECK(ci.c_hat == doctest::Approx(static_cast<double>(lattice_points_in_disc(200)) / 40000));

  const NumberField q2 = NumberField::quadratic(2);
  CHECK(estimate_constant(q2, scan_family(q2, uniform_family(q2, {25, 50, 100})).rows).deviation < 0.02);
  CHECK_THROWS_AS(estimate_constant(q, scan_family(q, uniform_family(q, {10, 100})).rows), DomainError);
}

TEST_CASE("fit_error_exponent examples") {
  const NumberField q = NumberField::rationals();
  const ExponentFit fq = fit_error_exponent(q, scan_family(q, uniform_family(q, {10, 100, 1000, 10000})).rows);
  CHECK(fq.bound == 0);
  CHECK(std::abs(fq.slope) < 1e-12);
  CHECK(fq.pass);
  CHECK(fq.used == 4);
  CHECK(fq.constant == doctest::Approx(1.0));

  const NumberField qi = NumberField::gaussian();
  ScanFamily fam = uniform_family(qi, {});
  fam.schedule = geometric_schedule(10, 2, 6);
  const ExponentFit fi = fit_error_exponent(qi, scan_family(qi, fam).rows);
  CHECK(fi.bound == 0.5);
  CHECK(fi.slope <= 0.6);
  CHECK(fi.pass);

  const NumberField q2 = NumberField::quadratic(2);
  fam = uniform_family(q2, {});
  fam.schedule = geometric_schedule(3, 2, 6);
  const ExponentFit f2 = fit_error_exponent(q2, scan_family(q2, fam).rows);
  CHECK(f2.slope <= 0.6);
  CHECK(f2.pass);

  // log|error| = 2 log norm exactly
  const ExponentFit steep = fit_error_exponent(qi, synthetic_rows({{10, 100}, {20, 400}, {40, 1600}, {80, 6400}}));
  CHECK(steep.slope == doctest::Approx(2.0));
  CHECK_FALSE(steep.pass);

  const ExponentFit flat = fit_error_exponent(qi, synthetic_rows({{10, 0.1}, {20, -0.2}, {40, 0.4}, {80, 3}}));
  CHECK(flat.saturated);
  CHECK(flat.pass);
  CHECK(flat.used == 1);

  CHECK_THROWS_AS(fit_error_exponent(qi, synthetic_rows({{10, 1}, {20, 2}, {40, 3}})), DomainError);
}

TEST_CASE("principal_invariance_check examples") {
  const NumberField qi = NumberField::gaussian();
  const RepleteIdeal a = make_replete(qi, unit_ideal(qi), {Rational(10)});
  const InvarianceReport r = principal_invariance_check(qi, a, qi.generator());
  CHECK(r.pass);
  CHECK(r.count_before == 317);
  CHECK(r.count_after == 317);
  CHECK(principal_invariance_check(qi, a, qi.one() + qi.generator()).pass);
  CHECK(principal_invariance_check(qi, a, qi.element({Rational(3), Rational(-2)})).pass);

  const NumberField q2 = NumberField::quadratic(2);
  const RepleteIdeal b = make_replete(q2, unit_ideal(q2), {Rational(7), Rational(5)});
  const InvarianceReport r2 = principal_invariance_check(q2, b, q2.one() + q2.generator());
  CHECK(r2.pass);
  CHECK(r2.count_before > 1);
  CHECK_THROWS_AS(principal_invariance_check(qi, a, qi.zero()), DomainError);
}

TEST_CASE("emit_csv examples") {
  std::ostringstream empty;
  emit_csv({}, empty);
  CHECK(empty.str() == "index,norm,count,leading,error,ratio\n");

  const NumberField q = NumberField::rationals();
  std::ostringstream one;
  emit_csv(scan_family(q, uniform_family(q, {10})).rows, one);
  CHECK(one.str() == "index,norm,count,leading,error,ratio\n0,10,21,20,1,2.1\n");

  const NumberField qi = NumberField::gaussian();
  std::ostringstream two;
  emit_csv(scan_family(qi, uniform_family(qi, {10})).rows, two);
  CHECK(two.str() == "index,norm,count,leading,error,ratio\n0,100,317,314.159265359,2.840734641,3.17\n");

  std::ostringstream bad;
  bad.setstate(std::ios::badbit);
  CHECK_THROWS_AS(emit_csv({}, bad), IoError);
}

TEST_CASE("format_g12") {
  CHECK(format_g12(std::acos(-1.0) * 100) == "314.159265359");
  CHECK(format_g12(2.1) == "2.1");
  CHECK(format_g12(1e-20) == "1e-20");
}
