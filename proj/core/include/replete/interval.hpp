#pragma once

#include "replete/rational.hpp"

#include <mpfr.h>

#include <string>

namespace replete {

// Closed real interval [lo, hi] with MPFR endpoints rounded outward.
// Every operation returns an enclosure of the exact result set.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(const Rational& q, mpfr_prec_t prec);
  Interval(double x, mpfr_prec_t prec);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval pi(mpfr_prec_t prec);
  // Hull of two rationals, in either order.
  static Interval hull(const Rational& a, const Rational& b, mpfr_prec_t prec);

  // Point interval at the (rounded) midpoint.
  Interval midpoint() const;
  // [mid - r, mid + r] around this point's midpoint, r taken as an upper bound.
  Interval inflate(const Interval& radius) const;

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_double() const;

  bool contains(const Rational& q) const;
  bool contains_zero() const;
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  // hi <= q  /  lo > q
  bool certainly_le(const Rational& q) const;
  bool certainly_gt(const Rational& q) const;
  bool overlaps(const Interval& other) const;
  // True when hi - lo <= 2^-bits.
  bool width_at_most_pow2(long bits) const;
  // Upper bound on log2(hi - lo); -inf for a point interval.
  double log2_width() const;

  std::string to_string(int digits = 17) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);
  friend Interval sqr(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval abs(const Interval& a);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

// Axis-aligned rectangle enclosure of a complex number.
struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }
  // Enclosure of |z|^2.
  Interval norm_sq() const { return sqr(re) + sqr(im); }

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexInterval operator*(const Interval& a, const ComplexInterval& b) {
    return {a * b.re, a * b.im};
  }
};

}  // namespace replete
