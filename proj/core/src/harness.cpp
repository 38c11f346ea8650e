#include "replete/harness.hpp"

#include "replete/adelic.hpp"
#include "replete/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

namespace replete {

std::string format_g12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::vector<ScanPoint> geometric_schedule(const Rational& t0, const Rational& ratio, int k) {
  if (t0 <= 0 || ratio <= 1 || k < 1) throw DomainError("geometric schedule needs t0 > 0, ratio > 1, k >= 1");
  std::vector<ScanPoint> out;
  Rational t = t0;
  for (int i = 0; i < k; ++i, t *= ratio) out.push_back({t, 0});
  return out;
}

RepleteIdeal family_point(const NumberField& k, const ScanFamily& family, std::size_t i) {
  const ScanPoint& p = family.schedule.at(i);
  RepleteIdeal a = replete_scale(k, family.base, p.scale);
  if (p.power != 0) {
    if (!family.step) throw DomainError("schedule uses ideal powers but the family has no step ideal");
    a.finite = multiply(k, a.finite, power(k, *family.step, p.power));
  }
  return a;
}

ScanResult scan_family(const NumberField& k, const ScanFamily& family, const EnumerationOptions& opts) {
  const std::size_t m = family.schedule.size();
  std::vector<RepleteIdeal> points;
  std::vector<Rational> norms;
  for (std::size_t i = 0; i < m; ++i) {
    points.push_back(family_point(k, family, i));
    norms.push_back(replete_norm(k, points.back()));
    if (i > 0 && !(norms[i] > norms[i - 1])) throw DomainError("schedule must be strictly increasing in norm");
  }
  const double vol = vol_B(k).mid_double();

  std::vector<std::optional<std::uint64_t>> counts(m);
  std::vector<std::string> failures(m);
  std::atomic<std::size_t> next{0};
  EnumerationOptions inner = opts;
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(m)));
  if (workers > 1) inner.threads = 1;
  auto work = [&] {
    for (std::size_t i; (i = next++) < m;) {
      try {
        counts[i] = count_h0(k, replete_inverse(k, points[i]), inner);
      } catch (const BudgetError& e) {
        failures[i] = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  ScanResult result;
  for (std::size_t i = 0; i < m; ++i) {
    if (!counts[i]) {
      result.incomplete = "point " + std::to_string(i) + ": " + failures[i];
      break;
    }
    ScanRow row;
    row.index = static_cast<long>(i);
    row.norm = norms[i];
    row.count = *counts[i];
    row.leading = std::stod(format_g12(vol * norms[i].get_d()));
    const Rational leading_exact = parse_rational(format_g12(row.leading));
    row.error = Rational(Rational(static_cast<unsigned long>(row.count)) - leading_exact).get_d();
    row.ratio = Rational(Rational(static_cast<unsigned long>(row.count)) / norms[i]).get_d();
    result.rows.push_back(row);
  }
  return result;
}

ConstantEstimate estimate_constant(const NumberField& k, const std::vector<ScanRow>& rows) {
  if (rows.size() < 3) throw DomainError("constant estimate needs at least three rows");
  const auto largest = std::max_element(rows.begin(), rows.end(),
                                        [](const ScanRow& a, const ScanRow& b) { return a.norm < b.norm; });
  ConstantEstimate c;
  c.c_hat = largest->ratio;
  c.vol_b = vol_B(k).mid_double();
  c.deviation = std::abs(c.c_hat / c.vol_b - 1);
  return c;
}

ExponentFit fit_error_exponent(const NumberField& k, const std::vector<ScanRow>& rows) {
  if (rows.size() < 4) throw DomainError("exponent fit needs at least four rows");
  ExponentFit fit;
  fit.bound = 1.0 - 1.0 / k.degree();
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (std::abs(r.error) < 0.5) continue;
    const double x = std::log(r.norm.get_d());
    xs.push_back(x);
    ys.push_back(std::log(std::abs(r.error)));
    fit.constant = std::max(fit.constant, std::abs(r.error) / std::pow(r.norm.get_d(), fit.bound));
  }
  fit.used = xs.size();
  if (xs.size() < 2) {
    fit.saturated = true;
    fit.pass = true;
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx <= 0) throw DomainError("exponent fit needs rows with distinct norms");
  fit.slope = sxy / sxx;
  fit.pass = fit.slope <= fit.bound + fit.margin;
  return fit;
}

InvarianceReport principal_invariance_check(const NumberField& k, const RepleteIdeal& a, const FieldElement& gamma,
                                            const EnumerationOptions& opts) {
  if (gamma.is_zero()) throw DomainError("γ must be nonzero");
  InvarianceReport r;
  r.count_before = count_h0(k, replete_inverse(k, a), opts);
  r.count_after = count_h0(k, replete_inverse(k, replete_mul_principal(k, a, gamma)), opts);
  r.pass = r.count_before == r.count_after;
  return r;
}

void emit_csv(const std::vector<ScanRow>& rows, std::ostream& out) {
  out << "index,norm,count,leading,error,ratio\n";
  for (const auto& r : rows) {
    out << r.index << ',' << format_g12(r.norm.get_d()) << ',' << r.count << ',' << format_g12(r.leading) << ','
        << format_g12(r.error) << ',' << format_g12(r.ratio) << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing CSV output");
}

}  // namespace replete
