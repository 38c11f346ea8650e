#include "cli.hpp"

#include "replete/adelic.hpp"
#include "replete/errors.hpp"
#include "replete/harness.hpp"
#include "replete/lattice.hpp"
#include "replete/parse.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <map>

namespace replete::cli {

namespace {

struct Common {
  std::string field = "Q";
  std::string spec;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000'000;
  long precision_cap = NumberField::kDefaultPrecisionCap;
};

unsigned default_threads() {
  if (const char* env = std::getenv("REPLETE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

NumberField load_field(const Common& c) {
  return c.spec.empty() ? field_from_name(c.field) : field_from_spec_file(c.spec);
}

EnumerationOptions enumeration(const Common& c) {
  EnumerationOptions o;
  o.node_budget = c.budget;
  o.threads = c.threads;
  o.precision_cap = c.precision_cap;
  return o;
}

std::vector<Rational> split_rationals(const std::string& text) { return parse_rational_list(text); }

RegionFactor parse_factor(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw DomainError("region factor must look like kind:params");
  const std::string_view kind = text.substr(0, colon);
  RationalVector p = parse_rational_list(text.substr(colon + 1));
  auto need = [&](std::size_t n) {
    if (p.size() != n) throw DomainError(std::string(kind) + " needs " + std::to_string(n) + " parameters");
  };
  if (kind == "interval") {
    need(2);
    return RegionFactor::interval(p[0], p[1]);
  }
  if (kind == "disc") {
    need(3);
    return RegionFactor::disc(p[0], p[1], p[2]);
  }
  if (kind == "box") {
    need(4);
    return RegionFactor::box(p[0], p[1], p[2], p[3]);
  }
  throw DomainError("unknown region factor '" + std::string(kind) + "'");
}

ArchRegion parse_region(const std::string& text) {
  ArchRegion r;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    const std::string part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!part.empty()) r.factors.push_back(parse_factor(part));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return r;
}

struct ShapePreset {
  std::string field;
  std::string e;
  std::string d;
};

const std::map<std::string, ShapePreset>& shape_presets() {
  static const std::map<std::string, ShapePreset> presets{
      {"interval", {"Q", "interval:-1,1", "interval:0,1"}},
      {"square2", {"Qsqrt:2", "interval:-1,1;interval:-1,1", "interval:0,1;interval:0,1"}},
      {"disc-square", {"Qi", "disc:0,0,1", "box:0,1,0,1"}},
  };
  return presets;
}

void print_ideal(std::ostream& out, const std::string& key, const FracIdeal& a) {
  out << key << ": " << to_string(a) << '\n';
  out << key << "_norm: " << to_string(norm(a)) << '\n';
}

int cmd_field_info(const Common& c, std::ostream& out) {
  const NumberField k = load_field(c);
  out << "field: " << k.name() << '\n';
  out << "degree: " << k.degree() << '\n';
  out << "signature: " << k.real_places() << ' ' << k.complex_places() << '\n';
  out << "discriminant: " << k.discriminant().get_str() << '\n';
  const FracIdeal diff = k.has_power_basis() ? different_ideal(k) : invert(k, codifferent(k));
  print_ideal(out, "different", diff);
  if (k.irreducibility_asserted()) out << "note: irreducibility of the defining polynomial was not verified\n";
  return kOk;
}

int cmd_ideal(const Common& c, const std::string& expr, std::ostream& out) {
  const NumberField k = load_field(c);
  const ExpressionValue v = evaluate_ideal_expression(k, expr);
  if (v.ideal) print_ideal(out, "ideal", *v.ideal);
  if (v.number) out << "norm: " << to_string(*v.number) << '\n';
  return kOk;
}

int cmd_h0(const Common& c, const std::string& ideal, const std::string& bounds, bool list, std::size_t cap,
           std::ostream& out) {
  const NumberField k = load_field(c);
  const FracIdeal a = parse_ideal(k, ideal);
  RationalVector b = split_rationals(bounds);
  if (b.size() == 1) b.assign(static_cast<std::size_t>(k.place_count()), b[0]);
  const H0Region region{ArchimedeanPart{b, std::nullopt}};
  const EnumerationOptions opts = enumeration(c);
  if (list) {
    const auto elems = enumerate_in_region(k, a, region, cap, opts);
    out << "count: " << elems.size() << '\n';
    for (const auto& e : elems) out << to_string(e) << '\n';
  } else {
    out << "count: " << count_in_region(k, a, region, opts) << '\n';
  }
  return kOk;
}

int cmd_rr_scan(const Common& c, const std::string& base, const std::string& schedule, const std::string& out_path,
                std::optional<double> max_deviation, std::ostream& out) {
  const NumberField k = load_field(c);
  ScanFamily family;
  family.base = parse_replete(k, base);
  if (!schedule.starts_with("geometric:")) throw DomainError("schedule must look like geometric:t0,ratio,k");
  const RationalVector g = parse_rational_list(schedule.substr(10));
  if (g.size() != 3 || g[2].get_den() != 1 || !g[2].get_num().fits_sint_p())
    throw DomainError("geometric schedule needs t0,ratio,k with integer k");
  family.schedule = geometric_schedule(g[0], g[1], static_cast<int>(g[2].get_num().get_si()));

  const ScanResult res = scan_family(k, family, enumeration(c));
  if (out_path == "-") {
    emit_csv(res.rows, out);
  } else {
    std::ofstream f(out_path);
    if (!f) throw IoError("cannot open '" + out_path + "' for writing");
    emit_csv(res.rows, f);
  }
  bool ok = true;
  bool parity = true;
  for (const auto& r : res.rows)
    if (r.count > 0 && r.count % 2 == 0) parity = false;
  out << "rows: " << res.rows.size() << '\n';
  out << "parity: " << (parity ? "pass" : "fail") << '\n';
  ok = ok && parity;
  if (res.rows.size() >= 3) {
    const ConstantEstimate ce = estimate_constant(k, res.rows);
    out << "constant: " << format_g12(ce.c_hat) << '\n';
    out << "vol_B: " << format_g12(ce.vol_b) << '\n';
    out << "deviation: " << format_g12(ce.deviation) << '\n';
    if (max_deviation && ce.deviation > *max_deviation) ok = false;
  }
  if (res.rows.size() >= 4) {
    const ExponentFit fit = fit_error_exponent(k, res.rows);
    if (fit.saturated) {
      out << "exponent: error term saturated, pass trivially\n";
    } else {
      out << "exponent_slope: " << format_g12(fit.slope) << '\n';
      out << "exponent_bound: " << format_g12(fit.bound + fit.margin) << '\n';
      out << "error_constant: " << format_g12(fit.constant) << '\n';
    }
    out << "exponent: " << (fit.pass ? "pass" : "fail") << '\n';
    ok = ok && fit.pass;
  }
  if (res.incomplete) {
    out << "incomplete: " << *res.incomplete << '\n';
    return kPrecision;
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_tate(const Common& c, const std::string& ideal, const std::string& lambda, const std::string& y,
             const std::string& y_finite, double tol, double trunc, std::ostream& out) {
  const NumberField k = load_field(c);
  const FracIdeal b = parse_ideal(k, ideal);
  RationalVector rates = split_rationals(lambda);
  if (rates.size() == 1) rates.assign(static_cast<std::size_t>(k.place_count()), rates[0]);
  const SchwartzTestFunction f = gaussian_test_function(k, b, rates);
  IdelePresentation idele = trivial_idele(k);
  RationalVector yv = split_rationals(y);
  if (yv.size() == 1) yv.assign(static_cast<std::size_t>(k.place_count()), yv[0]);
  if (yv.size() != static_cast<std::size_t>(k.place_count())) throw DomainError("--y needs one value per place");
  for (const auto& v : yv)
    if (v <= 0) throw DomainError("archimedean components of y must be positive");
  idele.arch.scale = yv;
  idele.finite = parse_edits(k, y_finite);
  const TateReport r = tate_check(k, f, idele, trunc, tol, enumeration(c));
  out << "lhs: " << format_g12(r.lhs.value) << '\n';
  out << "rhs: " << format_g12(r.rhs.value) << '\n';
  out << "diff: " << format_g12(r.difference) << '\n';
  out << "tail: " << format_g12(r.lhs.tail + r.rhs.tail) << '\n';
  out << "terms: " << r.lhs.terms << ' ' << r.rhs.terms << '\n';
  out << "pass: " << (r.pass ? "yes" : "no") << '\n';
  return r.pass ? kOk : kCheckFailed;
}

int cmd_surface(Common c, bool field_given, const std::string& shape, std::string e_text, std::string d_text,
                const std::string& t_list, std::uint64_t samples, std::optional<double> tol, std::ostream& out) {
  if (!shape.empty()) {
    const auto it = shape_presets().find(shape);
    if (it == shape_presets().end()) throw DomainError("unknown shape preset '" + shape + "'");
    if (!field_given && c.spec.empty()) c.field = it->second.field;
    e_text = it->second.e;
    d_text = it->second.d;
  }
  if (e_text.empty() || d_text.empty()) throw DomainError("surface needs --shape or both --E and --D");
  const NumberField k = load_field(c);
  const ArchRegion e = parse_region(e_text), d = parse_region(d_text);
  const std::vector<Rational> ts = t_list.empty() ? default_t_list() : split_rationals(t_list);
  MonteCarloOptions mc;
  mc.samples = samples;
  mc.seed = c.seed;
  mc.max_relative_ci = tol;
  const SurfaceAreaReport rep = surface_area(k, e, d, ts, mc);
  out << "t,growth,ci,quotient,quotient_ci\n";
  for (std::size_t j = 0; j < rep.growth.size(); ++j) {
    const auto& g = rep.growth[j];
    out << to_string(g.t) << ',' << format_g12(g.value) << ',' << format_g12(g.ci) << ','
        << format_g12(rep.quotient[j]) << ',' << format_g12(rep.quotient_ci[j]) << '\n';
  }
  out << "slope: " << format_g12(rep.slope) << '\n';
  out << "slope_ci: " << format_g12(rep.slope_ci) << '\n';
  if (rep.exact_slope) out << "exact_slope: " << to_string(*rep.exact_slope) << '\n';
  out << "monotone: " << (rep.monotone ? "yes" : "no") << '\n';
  if (!rep.exact_slope) out << "seed: " << rep.seed << "\nsamples: " << rep.samples << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting lattice points of replete ideals in number fields"};
  app.name(args.empty() ? "replete" : args[0]);
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  c.threads = default_threads();
  app.add_option("--field", c.field, "Field preset: Q, Qi, Qsqrt:<d>, poly:c0,...,1");
  app.add_option("--spec", c.spec, "JSON field spec file with keys poly and basis");
  app.add_option("--threads", c.threads, "Worker threads (default from REPLETE_THREADS)")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Seed for Monte Carlo sampling");
  app.add_option("--budget", c.budget, "Enumeration node budget")->check(CLI::PositiveNumber);
  app.add_option("--precision-cap", c.precision_cap, "Largest working precision in bits")->check(CLI::PositiveNumber);

  auto* field = app.add_subcommand("field", "Field invariants");
  field->require_subcommand(1);
  auto* info = field->add_subcommand("info", "Print degree, signature, discriminant and different");

  auto* ideal = app.add_subcommand("ideal", "Evaluate an ideal expression");
  std::string expr;
  ideal->add_option("--expr", expr, "mul(A,B), inv(A), pow(A,e), norm(A) over gen:[...] literals")->required();

  auto* h0 = app.add_subcommand("h0", "Count lattice points with bounded archimedean absolute values");
  std::string h0_ideal, bounds;
  bool list = false;
  std::size_t cap = 100000;
  h0->add_option("--ideal", h0_ideal, "Ideal literal")->required();
  h0->add_option("--bounds", bounds, "Bound per place, or one shared bound")->required();
  h0->add_flag("--list", list, "Print the elements");
  h0->add_option("--cap", cap, "Largest number of elements to list");

  auto* scan = app.add_subcommand("rr-scan", "Scan a family of replete ideals");
  std::string base, schedule, out_path = "-";
  std::optional<double> max_dev;
  scan->add_option("--base", base, "Replete ideal literal 'L | n1, n2, ...'")->required();
  scan->add_option("--schedule", schedule, "geometric:t0,ratio,k")->required();
  scan->add_option("--out", out_path, "CSV destination, '-' for standard output");
  scan->add_option("--max-deviation", max_dev, "Fail when the constant deviates by more than this");

  auto* tate = app.add_subcommand("tate-check", "Check the theta identity for a Gaussian test function");
  std::string tate_ideal, lambda = "1", y = "1", y_finite;
  double tol = 1e-9, trunc = 10;
  tate->add_option("--ideal", tate_ideal, "Finite part of the test function")->required();
  tate->add_option("--lambda", lambda, "Gaussian rate per place, or one shared rate");
  tate->add_option("--y", y, "Archimedean components of the idele y");
  tate->add_option("--y-finite", y_finite, "Finite edits '[coords]^e; ...'");
  tate->add_option("--tol", tol, "Tolerance on |lhs - rhs|");
  tate->add_option("--trunc", trunc, "Truncation radius");

  auto* surface = app.add_subcommand("surface", "Minkowski growth and surface area");
  std::string shape, e_text, d_text, t_list;
  std::uint64_t samples = 1'000'000;
  std::optional<double> surface_tol;
  surface->add_option("--shape", shape, "Preset: interval, square2, disc-square");
  surface->add_option("--E", e_text, "Region factors 'interval:a,b; disc:cx,cy,r; box:x0,x1,y0,y1'");
  surface->add_option("--D", d_text, "Parallelepiped factors, same syntax as --E");
  surface->add_option("--t-list", t_list, "Comma separated t values");
  surface->add_option("--samples", samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  surface->add_option("--tol", surface_tol, "Largest accepted relative confidence half-width");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (info->parsed()) return cmd_field_info(c, out);
    if (ideal->parsed()) return cmd_ideal(c, expr, out);
    if (h0->parsed()) return cmd_h0(c, h0_ideal, bounds, list, cap, out);
    if (scan->parsed()) return cmd_rr_scan(c, base, schedule, out_path, max_dev, out);
    if (tate->parsed()) return cmd_tate(c, tate_ideal, lambda, y, y_finite, tol, trunc, out);
    if (surface->parsed())
      return cmd_surface(c, app.count("--field") > 0, shape, e_text, d_text, t_list, samples, surface_tol, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Domain: return kUsage;
      case ErrorKind::Precision:
      case ErrorKind::Budget: return kPrecision;
      case ErrorKind::Tolerance: return kCheckFailed;
      case ErrorKind::Io: return kIo;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  err << "error: no command given\n";
  return kUsage;
}

}  // namespace replete::cli
