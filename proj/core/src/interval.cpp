#include "replete/interval.hpp"

#include "replete/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace replete {

namespace {

mpfr_prec_t join_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(double x, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_d(lo_, x, MPFR_RNDD);
  mpfr_set_d(hi_, x, MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Rational& a, const Rational& b, mpfr_prec_t prec) {
  Interval r(prec);
  const Rational& lo = a < b ? a : b;
  const Rational& hi = a < b ? b : a;
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::midpoint() const {
  Interval r(precision());
  mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
  return r;
}

Interval Interval::inflate(const Interval& radius) const {
  Interval m = midpoint();
  Interval r(precision());
  mpfr_sub(r.lo_, m.lo_, radius.hi_, MPFR_RNDD);
  mpfr_add(r.hi_, m.hi_, radius.hi_, MPFR_RNDU);
  return r;
}

double Interval::mid_double() const {
  return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::certainly_le(const Rational& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) <= 0; }

bool Interval::certainly_gt(const Rational& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0; }

bool Interval::overlaps(const Interval& other) const {
  return mpfr_cmp(lo_, other.hi_) <= 0 && mpfr_cmp(other.lo_, hi_) <= 0;
}

bool Interval::width_at_most_pow2(long bits) const {
  mpfr_t w;
  mpfr_init2(w, precision() + 2);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  bool ok = mpfr_zero_p(w) || mpfr_cmp_si_2exp(w, 1, -bits) <= 0;
  mpfr_clear(w);
  return ok;
}

double Interval::log2_width() const {
  mpfr_t w;
  mpfr_init2(w, precision() + 2);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double r = -std::numeric_limits<double>::infinity();
  if (!mpfr_zero_p(w)) {
    mpfr_log2(w, w, MPFR_RNDU);
    r = mpfr_get_d(w, MPFR_RNDU);
  }
  mpfr_clear(w);
  return r;
}

std::string Interval::to_string(int digits) const {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "[%.*RDg, %.*RUg]", digits, lo_, digits, hi_);
  return buf;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.precision());
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = join_prec(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_srcptr ends_a[2] = {a.lo_, a.hi_};
  mpfr_srcptr ends_b[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : ends_a) {
    for (auto y : ends_b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw PrecisionError("interval division by an enclosure of zero");
  const mpfr_prec_t prec = join_prec(a, b);
  Interval inv(prec);
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval sqr(const Interval& a) {
  Interval r = abs(a);
  mpfr_sqr(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, r.hi_, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.hi_) < 0) throw DomainError("square root of a negative interval");
  Interval r(a.precision());
  if (mpfr_sgn(a.lo_) <= 0) mpfr_set_zero(r.lo_, 1);
  else mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  Interval r(a.precision());
  if (mpfr_sgn(a.lo_) >= 0) {
    mpfr_set(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
  } else if (mpfr_sgn(a.hi_) <= 0) {
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 1);
    if (mpfr_cmpabs(a.lo_, a.hi_) > 0) mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    else mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
  }
  return r;
}

}  // namespace replete
