#include "nfv/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfv/errors.hpp"
#include "nfv/fields.hpp"
#include "nfv/identities.hpp"
#include "nfv/kernels.hpp"
#include "nfv/numerics.hpp"
#include "nfv/report.hpp"
#include "identities_internal.hpp"
#include "parallel.hpp"

namespace nfv::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad invocation detected before any computation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kSlopeBand = 0.3;

struct Settings {
  std::string prec = "256";
  std::string tol;
  std::string format = "json";
  std::string out;
  std::string disc;
  std::string table;
  std::string meta;
  std::string cache_dir;
  std::string jobs = "1";
  bool timing = false;

  std::vector<std::string> a, y, s, nu, x, mu, probe, continued, m;
  std::string max, n_range, terms, n_list;
};

long parse_long(const std::string& flag, const std::string& text, long lo, long hi) {
  long v = 0;
  try {
    std::size_t used = 0;
    v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": not an integer: '" + text + "'");
  }
  if (v < lo || v > hi)
    throw UsageError(flag + ": " + text + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

double parse_positive(const std::string& flag, const std::string& text) {
  double v = 0;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": not a number: '" + text + "'");
  }
  if (!(std::isfinite(v) && v > 0)) throw UsageError(flag + ": must be positive and finite");
  return v;
}

Real parse_real(const std::string& flag, const std::string& text, long bits) {
  WorkingPrecision wp(bits);
  try {
    return Real(std::string_view(text));
  } catch (const Error&) {
    throw UsageError(flag + ": not a decimal number: '" + text + "'");
  }
}

// RE[,IM] parsed at full precision.
Complex parse_complex(const std::string& flag, const std::string& text, long bits) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return Complex(parse_real(flag, text, bits), Real::with_precision(bits));
  return {parse_real(flag, text.substr(0, comma), bits), parse_real(flag, text.substr(comma + 1), bits)};
}

std::vector<Complex> parse_grid(const std::string& flag, const std::vector<std::string>& values, long bits) {
  if (values.empty()) throw UsageError(flag + " is required");
  std::vector<Complex> out;
  for (const auto& v : values) out.push_back(parse_complex(flag, v, bits));
  return out;
}

std::vector<long> parse_list(const std::string& flag, const std::string& text, long lo, long hi) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_long(flag, item, lo, hi));
  if (out.empty()) throw UsageError(flag + " is empty");
  return out;
}

NumberField resolve_field(const Settings& s) {
  if (!s.table.empty() || !s.meta.empty()) {
    if (s.table.empty() || s.meta.empty()) throw UsageError("--table and --meta must be given together");
    if (!s.disc.empty()) throw UsageError("--disc conflicts with --table/--meta");
    return load_vk_table(s.table, s.meta);
  }
  if (s.disc.empty()) throw UsageError("--disc or --table/--meta is required");
  return field_from_discriminant(parse_long("--disc", s.disc, -1'000'000'000'000L, 1'000'000'000'000L));
}

std::string error_text(const Error& e) { return e.what(); }

// A flat table for the evaluation commands: JSON array of objects (one object for a single row) or CSV.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  [[nodiscard]] std::string render(ReportFormat format) const {
    if (format == ReportFormat::Csv) {
      std::string text;
      for (std::size_t i = 0; i < columns.size(); ++i) text += (i ? "," : "") + csv_escape(columns[i]);
      text += "\n";
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
          text += (i ? "," : "") + csv_escape(row[i].is_string() ? row[i].get<std::string>()
                                              : row[i].is_null() ? std::string()
                                                                 : row[i].dump());
        text += "\n";
      }
      return text;
    }
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
      arr.push_back(std::move(obj));
    }
    return (rows.size() == 1 ? arr.front() : arr).dump(2) + "\n";
  }
};

// One grid point of a verification sweep.
struct Point {
  VerificationReport skeleton;  // identity, field, params, precision: used verbatim if the computation fails
  std::function<VerificationReport(int jobs)> compute;
};

struct Plan {
  std::vector<Point> points;
  double tol = 0;
  bool slope_check = false;
};

// Everything validated; execution may still fail with a computational error.
struct Prepared {
  std::function<int(std::string& text)> execute;  // returns the exit code
};

VerificationReport skeleton(std::string identity, const NumberField& field,
                            std::vector<std::pair<std::string, Complex>> params, long bits,
                            std::optional<long> m = std::nullopt) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.field = describe(field);
  r.params = std::move(params);
  r.precision_bits = bits;
  r.continuation_m = m;
  return r;
}

// Least-squares slope of log(error) against log(n).
double fitted_slope(const std::vector<std::pair<double, double>>& points) {
  const double k = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

int execute_plan(Plan& plan, int jobs, bool timing, std::string& text, ReportFormat format) {
  const long count = static_cast<long>(plan.points.size());
  const int outer = count > 1 ? jobs : 1;
  const int inner = count > 1 ? 1 : jobs;
  auto reports = detail::parallel_map<VerificationReport>(0, count, outer, [&](long i) {
    const auto& p = plan.points[static_cast<std::size_t>(i)];
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    try {
      r = p.compute(inner);
    } catch (const Error& e) {
      r = p.skeleton;
      r.error = error_text(e);
    } catch (const std::exception& e) {
      r = p.skeleton;
      r.error = e.what();
    }
    if (timing)
      r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  });

  bool ok = std::none_of(reports.begin(), reports.end(), [](const auto& r) { return r.error.has_value(); });
  if (plan.slope_check) {
    // Group by continuation order; each group needs at least two successful points.
    std::map<long, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < reports.size(); ++i) groups[reports[i].continuation_m.value_or(0)].push_back(i);
    for (const auto& [m, idx] : groups) {
      std::vector<std::pair<double, double>> pts;
      double expected = 0;
      for (auto i : idx) {
        const auto& r = reports[i];
        if (r.error || r.abs_err.is_zero()) continue;
        const double n = r.params[2].second.re.to_double();
        expected = -(2.0 * static_cast<double>(m) + r.params[0].second.re.to_double() / 2.0 + 4.0);
        pts.emplace_back(std::log(n), r.abs_err.log2_abs() * std::log(2.0));
      }
      std::string note;
      if (pts.size() < 2) {
        ok = false;
        note = "slope fit: fewer than two usable points";
      } else {
        const double slope = fitted_slope(pts);
        const bool pass = std::fabs(slope - expected) <= kSlopeBand;
        ok = ok && pass;
        note = "fitted error slope " + fixed(slope, 4) + ", expected " + fixed(expected, 4) + " +/- " +
               fixed(kSlopeBand, 1) + (pass ? ": within band" : ": outside band");
      }
      for (auto i : idx) reports[i].strategy += (reports[i].strategy.empty() ? "" : "; ") + note;
    }
  } else {
    for (const auto& r : reports) ok = ok && r.within(plan.tol);
  }
  text = format_reports(reports, format);
  return ok ? kExitOk : kExitFailed;
}

// ---- Command builders: parse and validate, return the deferred computation.

struct Context {
  Settings s;
  PrecisionContext ctx;
  ReportFormat format = ReportFormat::Json;
  bool format_given = false;
  int jobs = 1;
  std::optional<double> tol;
  long bits() const { return ctx.precision_bits; }
};

void complex_cells(const Complex& z, long bits, std::vector<Json>& row) {
  row.emplace_back(decimal_string(z.re, bits));
  row.emplace_back(decimal_string(z.im, bits));
}

Prepared prepare_field_info(const Context& c) {
  NumberField field = resolve_field(c.s);
  return {[c, field](std::string& text) {
    Table t{{"label", "degree", "r1", "r2", "discriminant", "H", "source"}, {}};
    const char* source = field.source == CoefficientSource::Rational             ? "rational"
                         : field.source == CoefficientSource::QuadraticCharacter ? "quadratic_character"
                                                                                 : "table";
    t.rows.push_back({field.label(), field.degree, field.r1, field.r2, field.discriminant,
                      decimal_string(field.residue_H(c.ctx), c.bits()), source});
    text = t.render(c.format);
    return kExitOk;
  }};
}

Prepared prepare_vk(const Context& c) {
  NumberField field = resolve_field(c.s);
  if (c.s.max.empty()) throw UsageError("--max is required");
  const long max = parse_long("--max", c.s.max, 1, 100'000'000);
  if (field.source == CoefficientSource::Table) (void)field.table->at(max);
  const ReportFormat format = c.format_given ? c.format : ReportFormat::Csv;
  return {[c, field, max, format](std::string& text) {
    VkTable table;
    if (field.source == CoefficientSource::Table) {
      table.max_norm = max;
      table.counts.assign(field.table->counts.begin(), field.table->counts.begin() + max + 1);
    } else {
      table = cached_vk_table(field.discriminant, max);
    }
    if (format == ReportFormat::Csv) {
      text = format_vk_csv(table);
      return kExitOk;
    }
    Table t{{"norm", "count"}, {}};
    for (long m = 1; m <= max; ++m) t.rows.push_back({m, table.counts[static_cast<std::size_t>(m)]});
    text = t.render(format);
    return kExitOk;
  }};
}

Prepared prepare_sigma(const Context& c) {
  NumberField field = resolve_field(c.s);
  const auto as = parse_grid("--a", c.s.a, c.bits());
  if (c.s.n_range.empty()) throw UsageError("--n-range is required");
  const auto dots = c.s.n_range.find("..");
  if (dots == std::string::npos) throw UsageError("--n-range: expected LO..HI");
  const long lo = parse_long("--n-range", c.s.n_range.substr(0, dots), 1, 10'000'000);
  const long hi = parse_long("--n-range", c.s.n_range.substr(dots + 2), lo, 10'000'000);
  if (field.source == CoefficientSource::Table) (void)field.table->at(hi);
  return {[c, field, as, lo, hi](std::string& text) {
    Table t{{"a.re", "a.im", "n", "re", "im"}, {}};
    for (const auto& a : as) {
      std::vector<Complex> values;
      {
        WorkingPrecision wp(c.ctx.work_bits());
        values = divisor_sigma_range(field, a, hi);
      }
      for (long n = lo; n <= hi; ++n) {
        std::vector<Json> row;
        complex_cells(a, c.bits(), row);
        row.emplace_back(n);
        complex_cells(values[static_cast<std::size_t>(n)], c.bits(), row);
        t.rows.push_back(std::move(row));
      }
    }
    text = t.render(c.format);
    return kExitOk;
  }};
}

Prepared prepare_zeta(const Context& c) {
  NumberField field = resolve_field(c.s);
  const auto ss = parse_grid("--s", c.s.s, c.bits());
  return {[c, field, ss](std::string& text) {
    auto values = detail::parallel_terms(0, static_cast<long>(ss.size()), c.jobs,
                                         [&](long i) { return dedekind_zeta(field, ss[static_cast<std::size_t>(i)], c.ctx); });
    Table t{{"s.re", "s.im", "re", "im"}, {}};
    for (std::size_t i = 0; i < ss.size(); ++i) {
      std::vector<Json> row;
      complex_cells(ss[i], c.bits(), row);
      complex_cells(values[i], c.bits(), row);
      t.rows.push_back(std::move(row));
    }
    text = t.render(c.format);
    return kExitOk;
  }};
}

Prepared prepare_kernel(const Context& c) {
  NumberField field = resolve_field(c.s);
  const auto nus = parse_grid("--nu", c.s.nu, c.bits());
  const auto xs = parse_grid("--x", c.s.x, c.bits());
  for (const auto& x : xs)
    if (x.is_zero()) throw UsageError("--x: the kernel is evaluated at x != 0");
  return {[c, field, nus, xs](std::string& text) {
    struct Cell {
      Complex value;
      std::optional<Complex> closed;
      std::optional<Complex> printed;
    };
    const long count = static_cast<long>(nus.size() * xs.size());
    auto cells = detail::parallel_map<Cell>(0, count, c.jobs, [&](long i) {
      const auto& nu = nus[static_cast<std::size_t>(i) / xs.size()];
      const auto& x = xs[static_cast<std::size_t>(i) % xs.size()];
      Cell cell{kernel_eval({field, nu}, x, c.ctx), {}, {}};
      try {
        if (field.degree == 1) {
          cell.closed = kernel_closed_form_rational(nu, x, c.ctx);
        } else if (field.degree == 2 && field.r2 == 1) {
          cell.closed = kernel_closed_form_imaginary_quadratic(nu, x, c.ctx);
          cell.printed = kernel_closed_form_imaginary_quadratic(nu, x, c.ctx, KernelVariant::AsPrinted);
        }
      } catch (const Error&) {
        // No closed form at this order (integer 2 nu): the residue series value stands alone.
      }
      return cell;
    });
    Table t{{"nu.re", "nu.im", "x.re", "x.im", "re", "im", "closed_form.re", "closed_form.im", "as_printed.re",
             "as_printed.im"},
            {}};
    for (long i = 0; i < count; ++i) {
      const auto& cell = cells[static_cast<std::size_t>(i)];
      std::vector<Json> row;
      complex_cells(nus[static_cast<std::size_t>(i) / xs.size()], c.bits(), row);
      complex_cells(xs[static_cast<std::size_t>(i) % xs.size()], c.bits(), row);
      complex_cells(cell.value, c.bits(), row);
      for (const auto* opt : {&cell.closed, &cell.printed}) {
        if (*opt) {
          complex_cells(**opt, c.bits(), row);
        } else {
          row.emplace_back(nullptr);
          row.emplace_back(nullptr);
        }
      }
      t.rows.push_back(std::move(row));
    }
    text = t.render(c.format);
    return kExitOk;
  }};
}

Prepared plan_prepared(const Context& c, Plan plan) {
  return {[c, plan = std::move(plan)](std::string& text) mutable {
    return execute_plan(plan, c.jobs, c.s.timing, text, c.format);
  }};
}

Prepared prepare_verify_koshliakov(const Context& c) {
  NumberField field = resolve_field(c.s);
  const auto mus = parse_grid("--mu", c.s.mu, c.bits());
  const auto nus = parse_grid("--nu", c.s.nu, c.bits());
  const auto xs = parse_grid("--x", c.s.x, c.bits());
  Plan plan;
  plan.tol = c.tol.value_or(1e-8);
  for (const auto& mu : mus)
    for (const auto& nu : nus)
      for (const auto& x : xs) {
        validate_koshliakov_inputs(mu, nu, x);
        plan.points.push_back(
            {skeleton("koshliakov", field, {{"mu", mu}, {"nu", nu}, {"x", x}}, c.bits()),
             [field, mu, nu, x, ctx = c.ctx](int) { return verify_koshliakov(field, mu, nu, x, ctx); }});
      }
  return plan_prepared(c, std::move(plan));
}

Prepared prepare_verify_lambert(const Context& c) {
  NumberField field = resolve_field(c.s);
  const auto as = parse_grid("--a", c.s.a, c.bits());
  const auto ys = parse_grid("--y", c.s.y, c.bits());
  std::vector<std::optional<long>> ms;
  for (const auto& m : c.s.continued) ms.emplace_back(parse_long("--continued", m, 0, 50));
  if (ms.empty()) ms.emplace_back(std::nullopt);
  Plan plan;
  plan.tol = c.tol.value_or(1e-6);
  for (const auto& m : ms)
    for (const auto& a : as)
      for (const auto& y : ys) {
        validate_lambert_inputs(field, a, y, m);
        plan.points.push_back({skeleton(m ? "lambert_continued" : "lambert", field, {{"a", a}, {"y", y}}, c.bits(), m),
                               [field, a, y, m, ctx = c.ctx](int jobs) {
                                 return verify_lambert(field, a, y, m, ctx, SeriesOptions{jobs, 0});
                               }});
      }
  return plan_prepared(c, std::move(plan));
}

SchwartzProbe parse_probe(const std::string& text, long bits) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--probe: expected exp:Y or gauss:B, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string value = text.substr(colon + 1);
  if (kind == "exp") return SchwartzProbe::exponential(parse_complex("--probe", value, bits));
  if (kind == "gauss") {
    Real beta = parse_real("--probe", value, bits);
    if (!(beta.to_double() > 0)) throw UsageError("--probe: Gaussian beta must be positive");
    return SchwartzProbe::gaussian(std::move(beta));
  }
  throw UsageError("--probe: unknown kind '" + kind + "' (expected exp or gauss)");
}

Prepared prepare_verify_voronoi(const Context& c) {
  NumberField field = resolve_field(c.s);
  const auto as = parse_grid("--a", c.s.a, c.bits());
  if (c.s.probe.empty()) throw UsageError("--probe is required");
  std::vector<SchwartzProbe> probes;
  for (const auto& p : c.s.probe) probes.push_back(parse_probe(p, c.bits()));
  const long terms = c.s.terms.empty() ? 0 : parse_long("--terms", c.s.terms, 0, 1'000'000);
  Plan plan;
  // Gaussian probes converge only conditionally; their default threshold is the oscillation envelope.
  const bool gaussian = std::any_of(probes.begin(), probes.end(),
                                    [](const auto& p) { return p.kind() == SchwartzProbe::Kind::Gaussian; });
  plan.tol = c.tol.value_or(gaussian ? 1e-3 : 1e-8);
  for (const auto& probe : probes)
    for (const auto& a : as) {
      validate_voronoi_inputs(field, a, probe, SeriesOptions{1, terms});
      auto sk = skeleton("voronoi", field, {{"a", a}}, c.bits());
      sk.strategy = "probe " + probe.label();
      plan.points.push_back({std::move(sk), [field, a, probe, terms, ctx = c.ctx](int jobs) {
                               return voronoi_verify(field, a, probe, ctx, SeriesOptions{jobs, terms});
                             }});
    }
  return plan_prepared(c, std::move(plan));
}

Prepared prepare_verify_asymptotic(const Context& c) {
  NumberField field = resolve_field(c.s);
  if (!field.has_continuation()) throw UsageError("verify asymptotic needs a field with zeta_K continuation");
  const auto as = parse_grid("--a", c.s.a, c.bits());
  const auto ys = parse_grid("--y", c.s.y, c.bits());
  if (as.size() != 1 || ys.size() != 1) throw UsageError("verify asymptotic takes a single --a and --y");
  const Complex a = as.front();
  const Complex y = ys.front();
  if (!(y.re.to_double() > 0)) throw UsageError("--y: needs Re y > 0");
  detail::guard_lambert_parameter(a);
  if (c.s.m.empty()) throw UsageError("--m is required");
  std::vector<long> ms;
  for (const auto& m : c.s.m) ms.push_back(parse_long("--m", m, 0, 20));
  if (c.s.n_list.empty()) throw UsageError("--n-list is required");
  const auto ns = parse_list("--n-list", c.s.n_list, 1, 1'000'000);
  if (ns.size() < 2) throw UsageError("--n-list needs at least two values for the slope fit");
  Plan plan;
  plan.slope_check = true;
  for (long m : ms)
    for (long n : ns) {
      plan.points.push_back({skeleton("g_asymptotic", field, {{"a", a}, {"y", y}, {"n", Complex(n)}}, c.bits(), m),
                             [field, a, y, n, m, ctx = c.ctx](int) {
                               auto r = skeleton("g_asymptotic", field, {{"a", a}, {"y", y}, {"n", Complex(n)}},
                                                 ctx.precision_bits, m);
                               const auto check = g_asymptotic_check(field, a, y, n, m, ctx);
                               r.lhs = check.value;
                               r.rhs = check.truncated;
                               r.terms_used = m + 1;
                               r.strategy = "G by residue series; large-n expansion truncated after " +
                                            std::to_string(m + 1) + " terms";
                               r.finalize_errors();
                               return r;
                             }});
    }
  return plan_prepared(c, std::move(plan));
}

void add_globals(CLI::App& app, Settings& s) {
  app.add_option("--prec", s.prec, "working precision in bits (default 256)");
  app.add_option("--tol", s.tol, "relative tolerance for verification checks");
  app.add_option("--format", s.format, "output format: json or csv");
  app.add_option("--out", s.out, "output path (default stdout)");
  app.add_option("--disc", s.disc, "fundamental discriminant (1 for Q)");
  app.add_option("--table", s.table, "v_K table CSV for a user field");
  app.add_option("--meta", s.meta, "metadata JSON for a user field");
  app.add_option("--jobs", s.jobs, "worker threads (default 1)");
  app.add_option("--cache-dir", s.cache_dir, "v_K cache directory (overrides VORONOI_NF_CACHE)");
  app.add_flag("--timing", s.timing, "record elapsed milliseconds in reports");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Arbitrary-precision divisor sums, kernels and summation identities over number fields", "nfv"};
  app.require_subcommand(1);
  app.fallthrough();
  add_globals(app, s);

  auto* field_cmd = app.add_subcommand("field", "field registry");
  field_cmd->fallthrough();
  field_cmd->require_subcommand(1);
  auto* field_info = field_cmd->add_subcommand("info", "degree, signature, discriminant and residue")->fallthrough();

  auto* vk = app.add_subcommand("vk", "ideal counts v_K(m) for m <= max")->fallthrough();
  vk->add_option("--max", s.max, "largest norm");

  auto* sigma = app.add_subcommand("sigma", "sigma_{K,a}(n) over a range")->fallthrough();
  sigma->add_option("--a", s.a, "RE[,IM]");
  sigma->add_option("--n-range", s.n_range, "LO..HI");

  auto* zeta = app.add_subcommand("zeta", "Dedekind zeta function")->fallthrough();
  zeta->add_option("--s", s.s, "RE[,IM]");

  auto* kernel = app.add_subcommand("kernel", "kernel G_{K,nu}(x)")->fallthrough();
  kernel->add_option("--nu", s.nu, "RE[,IM]");
  kernel->add_option("--x", s.x, "RE[,IM]");

  auto* verify = app.add_subcommand("verify", "check an identity and emit reports")->fallthrough();
  verify->require_subcommand(1);
  auto* v_kosh = verify->add_subcommand("koshliakov", "generalized Koshliakov transform")->fallthrough();
  v_kosh->add_option("--mu", s.mu, "RE[,IM]");
  v_kosh->add_option("--nu", s.nu, "RE[,IM]");
  v_kosh->add_option("--x", s.x, "RE[,IM]");
  auto* v_lambert = verify->add_subcommand("lambert", "Lambert-series transformation")->fallthrough();
  v_lambert->add_option("--a", s.a, "RE[,IM]");
  v_lambert->add_option("--y", s.y, "RE[,IM]");
  v_lambert->add_option("--continued", s.continued, "continuation order m");
  auto* v_voronoi = verify->add_subcommand("voronoi", "summation formula")->fallthrough();
  v_voronoi->add_option("--a", s.a, "RE[,IM]");
  v_voronoi->add_option("--probe", s.probe, "exp:Y or gauss:B");
  v_voronoi->add_option("--terms", s.terms, "directly summed terms (default: automatic)");
  auto* v_asym = verify->add_subcommand("asymptotic", "large-n expansion of the Lambert G-function")->fallthrough();
  v_asym->add_option("--a", s.a, "RE[,IM]");
  v_asym->add_option("--y", s.y, "RE[,IM]");
  v_asym->add_option("--m", s.m, "expansion order");
  v_asym->add_option("--n-list", s.n_list, "comma-separated n values");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Prepared prepared;
  Context c;
  try {
    c.s = s;
    const long bits = parse_long("--prec", s.prec, 32, 8192);
    c.ctx = PrecisionContext::with_precision(bits);
    c.ctx.validate();
    if (!s.tol.empty()) c.tol = parse_positive("--tol", s.tol);
    c.jobs = static_cast<int>(parse_long("--jobs", s.jobs, 1, 256));
    if (s.format == "json")
      c.format = ReportFormat::Json;
    else if (s.format == "csv")
      c.format = ReportFormat::Csv;
    else
      throw UsageError("--format: expected json or csv, got '" + s.format + "'");
    c.format_given = app.count("--format") > 0;
    if (!s.cache_dir.empty()) ::setenv("VORONOI_NF_CACHE", s.cache_dir.c_str(), 1);

    if (field_info->parsed()) {
      prepared = prepare_field_info(c);
    } else if (vk->parsed()) {
      prepared = prepare_vk(c);
    } else if (sigma->parsed()) {
      prepared = prepare_sigma(c);
    } else if (zeta->parsed()) {
      prepared = prepare_zeta(c);
    } else if (kernel->parsed()) {
      prepared = prepare_kernel(c);
    } else if (v_kosh->parsed()) {
      prepared = prepare_verify_koshliakov(c);
    } else if (v_lambert->parsed()) {
      prepared = prepare_verify_lambert(c);
    } else if (v_voronoi->parsed()) {
      prepared = prepare_verify_voronoi(c);
    } else if (v_asym->parsed()) {
      prepared = prepare_verify_asymptotic(c);
    } else {
      throw UsageError("no command given");
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << error_text(e) << "\n";
    return kExitUsage;
  }

  std::string text;
  int code = kExitOk;
  try {
    code = prepared.execute(text);
  } catch (const Error& e) {
    // Evaluation commands render failures as a structured entry.
    text = Json{{"error", error_text(e)}}.dump(2) + "\n";
    code = kExitFailed;
  } catch (const std::exception& e) {
    text = Json{{"error", e.what()}}.dump(2) + "\n";
    code = kExitFailed;
  }

  try {
    if (s.out.empty() || s.out == "-")
      out << text << std::flush;
    else
      write_text(text, s.out);
  } catch (const Error& e) {
    err << "error: " << error_text(e) << "\n";
    return kExitFailed;
  }
  return code;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace nfv::cli
