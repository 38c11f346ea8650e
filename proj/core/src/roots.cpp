#include "replete/roots.hpp"

#include "replete/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace replete {

namespace {

using Cld = std::complex<long double>;

std::vector<Cld> aberth_start(const Polynomial& p) {
  const int n = p.degree();
  std::vector<long double> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = p.coeff(i).get_d() / p.leading().get_d();

  long double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::pow(std::abs(c[static_cast<std::size_t>(i)]), 1.0L / (n - i)));
  radius = std::max(radius * 2, 1.0L);

  auto eval = [&](Cld z, Cld& d) {
    Cld v = 1, dv = 0;
    for (int i = n - 1; i >= 0; --i) {
      dv = dv * z + v;
      v = v * z + c[static_cast<std::size_t>(i)];
    }
    d = dv;
    return v;
  };

  std::vector<Cld> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius * 0.7L, 2 * M_PIl * (k + 0.25L) / n);
  for (int iter = 0; iter < 500; ++iter) {
    long double worst = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      Cld d;
      Cld v = eval(z[k], d);
      if (v == Cld(0)) continue;
      Cld ratio = v / d;
      Cld s = 0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      Cld step = ratio / (1.0L - ratio * s);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

ComplexInterval horner(const std::vector<Interval>& coeffs, const ComplexInterval& z) {
  const mpfr_prec_t prec = z.precision();
  ComplexInterval acc(prec);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * z;
    acc.re = acc.re + *it;
  }
  return acc;
}

std::vector<Interval> interval_coeffs(const Polynomial& p, mpfr_prec_t prec) {
  std::vector<Interval> out;
  for (const auto& c : p.coeffs()) out.emplace_back(c, prec);
  return out;
}

ComplexInterval divide(const ComplexInterval& a, const ComplexInterval& b) {
  Interval den = b.norm_sq();
  ComplexInterval conj_b(b.re, -b.im);
  ComplexInterval num = a * conj_b;
  return {num.re / den, num.im / den};
}

struct Candidate {
  ComplexInterval z;  // point
  Interval radius;    // inclusion radius, upper bound in hi
};

// Distance lower bound |a - b| > r, with a and b points.
bool separated(const ComplexInterval& a, const ComplexInterval& b, const Interval& r) {
  ComplexInterval d(a.re - b.re, a.im - b.im);
  Interval dist2 = d.norm_sq();
  Interval r2 = sqr(r);
  return mpfr_cmp(dist2.lo(), r2.hi()) > 0;
}

}  // namespace

RootIsolation isolate_roots(const Polynomial& p, long bits, long cap_bits) {
  const int n = p.degree();
  if (n < 1) throw DomainError("root isolation needs a polynomial of positive degree");

  std::vector<Cld> start = aberth_start(p);
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<long>(128, bits + 64));
  std::vector<ComplexInterval> pts;
  for (const auto& z : start)
    pts.emplace_back(Interval(static_cast<double>(z.real()), prec), Interval(static_cast<double>(z.imag()), prec));

  const Polynomial dp = p.derivative();
  while (true) {
    if (prec > cap_bits + 64) throw PrecisionError("root isolation exceeded the precision cap");
    const auto fc = interval_coeffs(p, prec);
    const auto dc = interval_coeffs(dp, prec);
    std::vector<Candidate> cands;
    bool failed = false;
    for (auto& z0 : pts) {
      const Interval zero(Rational(0), prec);
      ComplexInterval z(zero + z0.re.midpoint(), zero + z0.im.midpoint());
      // Newton until the step stalls at this precision.
      for (int it = 0; it < 2 * prec; ++it) {
        ComplexInterval fd = horner(dc, z);
        if (fd.norm_sq().contains_zero()) break;
        ComplexInterval step = divide(horner(fc, z), fd);
        ComplexInterval next(z.re - step.re, z.im - step.im);
        next = ComplexInterval(next.re.midpoint(), next.im.midpoint());
        double sz = std::max(std::abs(step.re.mid_double()), std::abs(step.im.mid_double()));
        double mag = std::max({1.0, std::abs(z.re.mid_double()), std::abs(z.im.mid_double())});
        z = std::move(next);
        if (sz == 0 || std::log2(sz / mag) < -static_cast<double>(prec) + 8) break;
      }
      ComplexInterval fz = horner(fc, z);
      ComplexInterval fd = horner(dc, z);
      Interval dmag2 = fd.norm_sq();
      if (!dmag2.certainly_positive()) {
        failed = true;
        cands.push_back({z, Interval(prec)});
        continue;
      }
      Interval radius = Interval(Rational(n), prec) * sqrt(fz.norm_sq()) / sqrt(dmag2);
      cands.push_back({z, radius});
    }

    RootIsolation out;
    if (!failed) {
      // Pairwise disjoint inclusion discs: each contains exactly one root.
      for (std::size_t i = 0; i < cands.size() && !failed; ++i)
        for (std::size_t j = i + 1; j < cands.size() && !failed; ++j)
          if (!separated(cands[i].z, cands[j].z, cands[i].radius + cands[j].radius)) failed = true;
    }
    std::vector<std::pair<double, RootEnclosure>> reals, complexes;
    if (!failed) {
      for (std::size_t i = 0; i < cands.size() && !failed; ++i) {
        const auto& c = cands[i];
        Interval rad = c.radius;
        bool radius_ok = mpfr_cmp_si_2exp(rad.hi(), 1, -(bits + 1)) <= 0;
        if (!radius_ok) {
          failed = true;
          break;
        }
        ComplexInterval conj(c.z.re, -c.z.im);
        bool conj_isolated = true;
        for (std::size_t j = 0; j < cands.size(); ++j)
          if (j != i && !separated(conj, cands[j].z, c.radius + cands[j].radius)) conj_isolated = false;
        Interval abs_im = abs(c.z.im);
        bool off_axis = mpfr_cmp(abs_im.lo(), rad.hi()) > 0;
        if (conj_isolated) {
          RootEnclosure e;
          e.is_real = true;
          e.box = ComplexInterval(c.z.re.inflate(rad), Interval(Rational(0), prec));
          reals.emplace_back(c.z.re.mid_double(), std::move(e));
        } else if (off_axis) {
          if (c.z.im.certainly_positive()) {
            RootEnclosure e;
            e.box = ComplexInterval(c.z.re.inflate(rad), c.z.im.inflate(rad));
            complexes.emplace_back(c.z.re.mid_double(), std::move(e));
          }
        } else {
          failed = true;
        }
      }
    }
    if (!failed && reals.size() + 2 * complexes.size() == static_cast<std::size_t>(n)) {
      auto desc = [](const auto& a, const auto& b) { return a.first > b.first; };
      std::stable_sort(reals.begin(), reals.end(), desc);
      std::stable_sort(complexes.begin(), complexes.end(), desc);
      for (auto& r : reals) out.roots.push_back(std::move(r.second));
      for (auto& c : complexes) out.roots.push_back(std::move(c.second));
      out.real_count = static_cast<int>(reals.size());
      out.complex_pairs = static_cast<int>(complexes.size());
      return out;
    }
    pts.clear();
    for (auto& c : cands) pts.push_back(c.z);
    prec *= 2;
  }
}

}  // namespace replete
