#include "doctest.h"
#include "oracle.hpp"

#include "replete/errors.hpp"
#include "replete/ideal.hpp"
#include "replete/matrix.hpp"
#include "replete/number_field.hpp"
#include "replete/polynomial.hpp"
#include "replete/roots.hpp"

#include <random>

using namespace replete;

namespace {

Polynomial poly(std::initializer_list<long> c) {
  RationalVector v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(v);
}

NumberField from_poly(std::initializer_list<long> c) {
  FieldSpec spec;
  for (long x : c) spec.poly.emplace_back(x);
  return NumberField::from_spec(spec);
}

FieldElement random_element(const NumberField& k, std::mt19937& rng, int range = 4) {
  std::uniform_int_distribution<int> d(-range, range);
  RationalVector c;
  for (int i = 0; i < k.degree(); ++i) c.emplace_back(d(rng), 1 + (d(rng) + range) % 3);
  return k.element(c);
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational(" 2.5e1 ") == Rational(25));
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial f = poly({-2, 0, 1});
  CHECK(f(Rational(3)) == 7);
  CHECK(f.derivative() == poly({0, 2}));
  const auto qr = divmod(poly({-1, 0, 0, 1}), poly({-1, 1}));
  CHECK(qr.quotient == poly({1, 1, 1}));
  CHECK(qr.remainder.is_zero());
  CHECK(gcd(poly({-1, 0, 1}), poly({1, 2, 1})) == poly({1, 1}));
  CHECK(squarefree_part(poly({1, 2, 1})) == poly({1, 1}));
  // Res(x^2 + 1, x + 1) = 2
  CHECK(resultant(poly({1, 0, 1}), poly({1, 1})) == 2);
  CHECK(count_real_roots(poly({-2, 0, 0, 1})) == 1);
  CHECK(count_real_roots(poly({-1, -3, 0, 1})) == 3);
}

TEST_CASE("matrices") {
  QMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 3;
  m(1, 1) = 4;
  CHECK(determinant(m) == -2);
  CHECK(inverse(m) * m == QMatrix::identity(2));
  CHECK(characteristic_polynomial(m) == poly({-2, -5, 1}));
  CHECK(kronecker(m, m)(3, 3) == 16);

  ZMatrix g(3, 2);
  g(0, 0) = 2; g(0, 1) = 0;
  g(1, 0) = 0; g(1, 1) = 2;
  g(2, 0) = 1; g(2, 1) = 1;
  const ZMatrix h = hermite_normal_form(g);
  CHECK(h.rows() == 2);
  CHECK(h(0, 0) == 1);
  CHECK(h(0, 1) == 1);
  CHECK(h(1, 0) == 0);
  CHECK(h(1, 1) == 2);
}

TEST_CASE("interval enclosures") {
  const Interval third = Interval(Rational(1), 128) / Interval(Rational(3), 128);
  CHECK(third.contains(Rational(1, 3)));
  CHECK(third.width_at_most_pow2(120));
  const Interval r2 = sqrt(Interval(Rational(2), 200));
  CHECK(sqr(r2).contains(Rational(2)));
  CHECK(r2.certainly_gt(Rational(141421, 100000)));
  CHECK(r2.certainly_le(Rational(141422, 100000)));
  CHECK(Interval::pi(64).contains_zero() == false);
  CHECK(abs(Interval(Rational(-3), 64)).contains(Rational(3)));
}

TEST_CASE("root isolation agrees with an independent solver") {
  for (auto coeffs : {std::vector<long>{-2, 0, 0, 1}, std::vector<long>{1, 0, 0, 0, 1}, std::vector<long>{-1, -3, 0, 1},
                      std::vector<long>{-1, -1, 0, 1}, std::vector<long>{3, -1, 2, 0, 1}}) {
    RationalVector c(coeffs.begin(), coeffs.end());
    const RootIsolation iso = isolate_roots(Polynomial(c), 80);
    const oracle::Field of = oracle::make_field(coeffs);
    REQUIRE(iso.real_count == of.r);
    REQUIRE(iso.complex_pairs == of.s);
    for (std::size_t i = 0; i < iso.roots.size(); ++i) {
      CHECK(iso.roots[i].box.re.mid_double() == doctest::Approx(static_cast<double>(of.places[i].real())).epsilon(1e-12));
      CHECK(iso.roots[i].box.im.mid_double() == doctest::Approx(static_cast<double>(of.places[i].imag())).epsilon(1e-12));
      CHECK(iso.roots[i].box.re.log2_width() <= -80);
    }
  }
}

TEST_CASE("make_field examples") {
  const NumberField q = NumberField::rationals();
  CHECK(q.degree() == 1);
  CHECK(q.real_places() == 1);
  CHECK(q.complex_places() == 0);
  CHECK(q.discriminant() == 1);

  const NumberField qi = from_poly({1, 0, 1});
  CHECK(qi.degree() == 2);
  CHECK(qi.real_places() == 0);
  CHECK(qi.complex_places() == 1);
  CHECK(qi.discriminant() == -4);

  FieldSpec s5;
  s5.poly = {-5, 0, 1};
  QMatrix b(2, 2);
  b(0, 0) = 1;
  b(1, 0) = Rational(1, 2);
  b(1, 1) = Rational(1, 2);
  s5.basis = b;
  const NumberField k5 = NumberField::from_spec(s5);
  CHECK(k5.discriminant() == 5);
  CHECK(NumberField::quadratic(5).discriminant() == 5);
  CHECK(NumberField::quadratic(-3).discriminant() == -3);
  CHECK(NumberField::quadratic(2).discriminant() == 8);

  const NumberField cubic = from_poly({-2, 0, 0, 1});
  CHECK(cubic.real_places() == 1);
  CHECK(cubic.complex_places() == 1);
  CHECK(cubic.discriminant() == -108);
}

TEST_CASE("make_field rejects bad input") {
  CHECK_THROWS_AS(from_poly({1, 0, 2}), DomainError);       // not monic
  CHECK_THROWS_AS(from_poly({-1, 0, 1}), DomainError);      // (x-1)(x+1)
  CHECK_THROWS_AS(from_poly({1, 0, 2, 0, 1}), DomainError); // (x^2+1)^2
  CHECK_THROWS_AS(from_poly({4, 0, 0, 0, 1}), DomainError); // (x^2-2x+2)(x^2+2x+2)
  FieldSpec bad;
  bad.poly = {1, 0, 1};
  QMatrix b(2, 2);
  b(0, 0) = 1;
  b(1, 1) = Rational(1, 2);  // θ/2 is not integral
  bad.basis = b;
  CHECK_THROWS_AS(NumberField::from_spec(bad), DomainError);
  CHECK_FALSE(from_poly({1, 0, 0, 0, 1}).irreducibility_asserted());
  CHECK(from_poly({-2, 0, 0, 0, 0, 1}).irreducibility_asserted());
}

TEST_CASE("signature and discriminant sign") {
  for (auto k : {NumberField::rationals(), NumberField::gaussian(), NumberField::quadratic(2), NumberField::quadratic(-7),
                 from_poly({-2, 0, 0, 1}), from_poly({-1, -3, 0, 1}), from_poly({1, 0, 0, 0, 1}),
                 from_poly({-2, 0, 0, 0, 0, 1})}) {
    CHECK(k.degree() == k.real_places() + 2 * k.complex_places());
    CHECK((k.discriminant() > 0) == (k.complex_places() % 2 == 0));
    CHECK(k.discriminant() == determinant(k.trace_matrix()));
  }
}

TEST_CASE("embed_element examples") {
  const NumberField q2 = NumberField::quadratic(2);
  auto e = q2.embed(q2.generator(), 40);
  CHECK(e[0].re.mid_double() == doctest::Approx(1.4142136).epsilon(1e-7));
  CHECK(e[1].re.mid_double() == doctest::Approx(-1.4142136).epsilon(1e-7));
  CHECK(e[0].re.log2_width() <= -40);

  const NumberField qi = NumberField::gaussian();
  auto z = qi.embed(qi.generator(), 64);
  CHECK(z[0].re.contains(Rational(0)));
  CHECK(z[0].im.contains(Rational(1)));
  auto one = qi.embed(qi.one(), 64);
  CHECK(one[0].re.contains(Rational(1)));
  CHECK(one[0].im.contains(Rational(0)));
  CHECK_THROWS_AS(qi.embed(qi.one(), 8), DomainError);
}

TEST_CASE("field_arith examples") {
  const NumberField qi = NumberField::gaussian();
  const FieldElement t = qi.generator();
  CHECK(qi.mul(qi.one() + t, qi.one() - t) == qi.from_integer(2));
  CHECK(qi.norm(qi.one() + t) == 2);

  const NumberField q2 = NumberField::quadratic(2);
  CHECK(q2.inv(q2.generator()) == Rational(1, 2) * q2.generator());
  CHECK_THROWS_AS(q2.inv(q2.zero()), DomainError);
  CHECK(q2.pow(q2.generator(), 4) == q2.from_integer(4));
  CHECK(q2.pow(q2.generator(), -2) == q2.from_integer(Rational(1, 2)));
}

TEST_CASE("norm is multiplicative and matches the embeddings") {
  std::mt19937 rng(7);
  for (auto k : {NumberField::gaussian(), NumberField::quadratic(5), from_poly({-2, 0, 0, 1}), from_poly({-1, -3, 0, 1}),
                 from_poly({1, 0, 0, 0, 1})}) {
    for (int trial = 0; trial < 10; ++trial) {
      const FieldElement a = random_element(k, rng), b = random_element(k, rng);
      CHECK(k.norm(k.mul(a, b)) == k.norm(a) * k.norm(b));
      if (a.is_zero()) continue;
      CHECK(k.mul(a, k.inv(a)) == k.one());
      const auto emb = k.embed(a, 100);
      Interval prod(Rational(1), 256);
      for (std::size_t v = 0; v < emb.size(); ++v)
        prod = prod * (k.places()[v].is_real ? abs(emb[v].re) : emb[v].norm_sq());
      CHECK(prod.contains(abs(k.norm(a))));
    }
  }
}

TEST_CASE("embeddings agree with the independent solver") {
  const oracle::Field of = oracle::make_field({-2, 0, 0, 1});
  const NumberField k = from_poly({-2, 0, 0, 1});
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const FieldElement a = random_element(k, rng);
    const auto emb = k.embed(a, 80);
    oracle::QVec p(a.coords.begin(), a.coords.end());
    for (int v = 0; v < k.place_count(); ++v) {
      const auto z = oracle::embed_power(of, p, v);
      CHECK(emb[static_cast<std::size_t>(v)].re.mid_double() == doctest::Approx(static_cast<double>(z.real())).epsilon(1e-12));
      CHECK(emb[static_cast<std::size_t>(v)].im.mid_double() == doctest::Approx(static_cast<double>(z.imag())).epsilon(1e-12));
    }
  }
}

TEST_CASE("different_ideal examples") {
  CHECK(different_ideal(NumberField::rationals()) == unit_ideal(NumberField::rationals()));
  const NumberField qi = NumberField::gaussian();
  CHECK(different_ideal(qi) == principal_ideal(qi, qi.from_integer(2)));
  CHECK(norm(different_ideal(qi)) == 4);
  CHECK(norm(different_ideal(NumberField::quadratic(2))) == 8);
  CHECK(norm(different_ideal(from_poly({-2, 0, 0, 1}))) == 108);
  CHECK_THROWS_AS(different_ideal(NumberField::quadratic(5)), DomainError);
}
