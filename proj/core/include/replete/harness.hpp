#pragma once

#include "replete/ideal.hpp"
#include "replete/lattice.hpp"
#include "replete/number_field.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace replete {

struct ScanRow {
  long index = 0;
  Rational norm;
  std::uint64_t count = 0;
  double leading = 0;  // vol_B * norm, to 12 significant digits
  double error = 0;    // count - leading
  double ratio = 0;    // count / norm
};

// One family point: the base ideal with its archimedean part scaled by
// `scale` and its finite part multiplied by step^power.
struct ScanPoint {
  Rational scale = 1;
  long power = 0;
};

struct ScanFamily {
  RepleteIdeal base;
  std::vector<ScanPoint> schedule;
  std::optional<FracIdeal> step;
};

// t0, t0 r, ..., t0 r^{k-1} applied to the archimedean part.
std::vector<ScanPoint> geometric_schedule(const Rational& t0, const Rational& ratio, int k);

RepleteIdeal family_point(const NumberField& k, const ScanFamily& family, std::size_t i);

struct ScanResult {
  std::vector<ScanRow> rows;
  // Set when a point ran out of budget; rows holds the points before it.
  std::optional<std::string> incomplete;
};

// Counts H^0(a^{-1}) at every family point. Points are distributed over
// opts.threads workers and assembled by index.
ScanResult scan_family(const NumberField& k, const ScanFamily& family, const EnumerationOptions& opts = {});

struct ConstantEstimate {
  double c_hat = 0;
  double vol_b = 0;
  double deviation = 0;  // |c_hat / vol_B - 1|
};

// Ratio at the largest norm. Throws DomainError with fewer than three rows.
ConstantEstimate estimate_constant(const NumberField& k, const std::vector<ScanRow>& rows);

struct ExponentFit {
  double slope = 0;
  double bound = 0;  // 1 - 1/n
  double margin = 0.1;
  // max |error| / norm^{1 - 1/n} over the rows used
  double constant = 0;
  std::size_t used = 0;
  bool saturated = false;
  bool pass = false;
};

// Least-squares slope of log|error| against log norm over rows with
// |error| >= 1/2. Throws DomainError with fewer than four rows.
ExponentFit fit_error_exponent(const NumberField& k, const std::vector<ScanRow>& rows);

struct InvarianceReport {
  std::uint64_t count_before = 0;
  std::uint64_t count_after = 0;
  bool pass = false;
};

// |H^0(a^{-1})| against |H^0(b^{-1})| for b the replete ideal of γ times the idele of a.
InvarianceReport principal_invariance_check(const NumberField& k, const RepleteIdeal& a, const FieldElement& gamma,
                                            const EnumerationOptions& opts = {});

// Header `index,norm,count,leading,error,ratio`, values to 12 significant digits.
void emit_csv(const std::vector<ScanRow>& rows, std::ostream& out);

// %.12g formatting used throughout the text output.
std::string format_g12(double x);

}  // namespace replete
