#include <cmath>
#include <numbers>
#include <sstream>

#include "identities_internal.hpp"
#include "nfv/kernels.hpp"
#include "nfv/numerics.hpp"
#include "parallel.hpp"

namespace nfv {

SchwartzProbe SchwartzProbe::exponential(Complex y) {
  if (!(y.re.to_double() > 0.0)) fail(ErrorKind::DomainError, "exponential probe needs Re y > 0");
  return SchwartzProbe(Kind::Exponential, std::move(y), Real(0L));
}

SchwartzProbe SchwartzProbe::gaussian(Real beta) {
  if (!(beta.to_double() > 0.0)) fail(ErrorKind::DomainError, "Gaussian probe needs beta > 0");
  return SchwartzProbe(Kind::Gaussian, Complex(), std::move(beta));
}

Complex SchwartzProbe::value(const Real& t) const {
  if (kind_ == Kind::Exponential) return exp(-(y_ * t));
  return Complex(exp(-(beta_ * t * t)));
}

Complex SchwartzProbe::mellin(const Complex& s, const PrecisionContext& ctx) const {
  if (kind_ == Kind::Exponential) {
    Complex g = gamma(s, ctx);
    WorkingPrecision wp(ctx.precision_bits);
    return g / pow(y_, s);
  }
  Complex half_s;
  {
    WorkingPrecision wp(ctx.work_bits());
    half_s = s / Real(2L);
  }
  Complex g = gamma(half_s, ctx);
  WorkingPrecision wp(ctx.precision_bits);
  return g / (pow(beta_, half_s) * Real(2L));
}

std::string SchwartzProbe::label() const {
  if (kind_ == Kind::Exponential) {
    std::string s = "exp:" + y_.re.to_string(17);
    if (!y_.im.is_zero()) s += "," + y_.im.to_string(17);
    return s;
  }
  return "gauss:" + beta_.to_string(17);
}

FieldDescriptor describe(const NumberField& field) {
  return {field.degree, field.r1, field.r2, field.discriminant};
}

void VerificationReport::finalize_errors() {
  Real a, r;
  {
    WorkingPrecision wp(precision_bits + 64);
    a = abs(lhs - rhs);
    Real floor = Real(1L);
    floor.mul_2si(-precision_bits);
    r = a / max(max(abs(lhs), abs(rhs)), floor);
  }
  // Stored at the report precision so serialization round-trips exactly.
  WorkingPrecision wp(precision_bits);
  abs_err = Complex(a).rounded().re;
  rel_err = Complex(r).rounded().re;
}

bool VerificationReport::within(double tol) const { return !error && rel_err.to_double() <= tol; }

namespace {

using detail::LambertTail;

std::string sci(const Complex& v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v.re.to_double();
  if (!v.im.is_zero()) os << (v.im.to_double() < 0 ? "" : "+") << v.im.to_double() << "i";
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

MeijerGSpec gaussian_spec(const NumberField& field, const Complex& a) {
  Complex nu, a1;
  {
    WorkingPrecision wp(std::max<long>(working_precision(), std::max(a.re.precision(), a.im.precision()) + 8));
    nu = a / Real(2L);
    a1 = (Complex(2L) - a) / Real(4L);
  }
  auto k = kernel_spec({field, nu});
  return MeijerGSpec(k.m(), 1, {std::move(a1)}, k.b());
}

// 2 pi^{(1+a+(1-a)d)/2} D^{(a-1)/2}
Complex voronoi_constant(const NumberField& field, const Complex& a) {
  const Complex one(1L);
  Complex v = pow(const_pi(), (one + a + (one - a) * Real(field.degree)) / Real(2L)) * Real(2L);
  return v * pow(Real(field.abs_discriminant), (a - one) / Real(2L));
}

// X_n / n = 4 pi^{d+1} / D
Real voronoi_frequency(const NumberField& field) {
  return pow(const_pi(), Real(field.degree + 1)) * Real(4L) / Real(field.abs_discriminant);
}

SeriesValue gaussian_lhs(const NumberField& field, const Complex& a, const Real& beta, const PrecisionContext& ctx) {
  const double b = beta.to_double();
  const double c = 2.0 + std::fabs(a.re.to_double());
  const double log_target = std::log(ctx.target_rel_tol) - b - 3.0;
  long N = 1;
  while (c * std::log(static_cast<double>(N + 1)) - b * static_cast<double>((N + 1) * (N + 1)) + 1.0 > log_target) {
    if (++N > 100'000'000) fail(ErrorKind::NoConvergence, "Gaussian sum: beta too small for direct summation");
  }
  WorkingPrecision wp(ctx.work_bits());
  auto sigma = divisor_sigma_range(field, a, N);
  Complex total;
  for (long n = 1; n <= N; ++n) total += sigma[static_cast<std::size_t>(n)] * exp(-(beta * Real(n) * Real(n)));
  WorkingPrecision out(ctx.precision_bits);
  return {total.rounded(), N, "direct sum to n=" + std::to_string(N)};
}

// log2 estimate of |G| for the Gaussian family at z: exp(-sigma z^{1/sigma} cos(pi d / sigma)), sigma = 2d+1.
double gaussian_log2_bound(int d, double z) {
  const double sigma = 2.0 * d + 1.0;
  return -sigma * std::pow(z, 1.0 / sigma) * std::cos(std::numbers::pi * d / sigma) / std::log(2.0);
}

}  // namespace

void validate_voronoi_inputs(const NumberField& field, const Complex& a, const SchwartzProbe& probe,
                             const SeriesOptions& options) {
  if (!field.has_continuation())
    fail(ErrorKind::ContinuationUnavailable, "summation formula needs zeta_K(1-a) and zeta_K(-a)");
  const double ra = a.re.to_double();
  if (!(ra > -0.5 && ra < 0.5)) fail(ErrorKind::DomainError, "summation formula needs -1/2 < Re a < 1/2");
  detail::guard_lambert_parameter(a);
  if (options.terms < 0) fail(ErrorKind::DomainError, "terms must be non-negative");
  if (probe.kind() == SchwartzProbe::Kind::Exponential) {
    const Complex& y = probe.y();
    if (std::fabs(std::atan2(y.im.to_double(), y.re.to_double())) >= std::numbers::pi / 4)
      fail(ErrorKind::DomainError, "exponential probe supports |arg y| < pi/4 only");
  }
}

VerificationReport voronoi_verify(const NumberField& field, const Complex& a, const SchwartzProbe& probe,
                                  const PrecisionContext& ctx, const SeriesOptions& options) {
  ctx.validate();
  validate_voronoi_inputs(field, a, probe, options);
  const bool exponential = probe.kind() == SchwartzProbe::Kind::Exponential;

  VerificationReport r;
  r.identity = "voronoi";
  r.field = describe(field);
  r.params = {{"a", a}};
  if (exponential)
    r.params.emplace_back("y", probe.y());
  else
    r.params.emplace_back("beta", Complex(probe.beta()));
  r.precision_bits = ctx.precision_bits;
  std::vector<std::string> notes;

  // Left side.
  SeriesValue lhs = exponential ? lambert_lhs_series(field, a, probe.y(), ctx) : gaussian_lhs(field, a, probe.beta(), ctx);
  r.lhs = lhs.value;
  notes.push_back("lhs " + lhs.notes);

  // Main terms: quadrature of (zeta_K(1-a) + t^a zeta(1+a) H) f(t), minus zeta_K(-a) f(0+)/2.
  const Complex one(1L);
  Complex A = dedekind_zeta(field, one - a, ctx);
  Complex B = riemann_zeta(one + a, ctx);
  Complex Z0 = dedekind_zeta(field, -a, ctx);
  Real H = field.residue_H(ctx.at_precision(ctx.work_bits()));
  QuadratureResult main_q = integrate_halfline(
      [&](const Real& t) {
        WorkingPrecision wp(ctx.work_bits());
        return (A + pow(t, a) * B * H) * probe.value(t);
      },
      ctx);
  notes.push_back("main terms by exp-sinh quadrature (" + std::to_string(main_q.evaluations) +
                  " nodes, error estimate " + sci(main_q.error_estimate.to_double()) + ")");

  // Per-n integrals.
  const Real freq = [&] {
    WorkingPrecision wp(ctx.work_bits());
    return voronoi_frequency(field);
  }();
  long N = options.terms;
  std::optional<MeijerGSpec> spec;
  Complex per_n_scale;  // I_n = per_n_scale * G(z_n)
  Complex C;            // z_n = C n^2
  std::optional<LambertTail> tail;
  if (exponential) {
    spec = lambert_spec(field, a);
    C = detail::lambert_scale(field, probe.y(), ctx);
    {
      WorkingPrecision wp(ctx.work_bits());
      const Complex& y = probe.y();
      // K_{1/2}(t) t^{1/2} = sqrt(pi/2) e^{-t} turns each integral into the transform at mu = 1/2, nu = a/2.
      per_n_scale = pow(y, -one - a / Real(2L)) * sqrt(Real(2L) / const_pi()) * pow(Real(2L), (a - one) / Real(2L));
    }
    if (N == 0) {
      tail = detail::lambert_crossover(*spec, C, ctx, 20'000);
      N = tail->n0;
    } else {
      Complex z_next;
      {
        WorkingPrecision wp(ctx.work_bits());
        z_next = C * Real(N + 1) * Real(N + 1);
      }
      if (auto e = asymptotic_to_tolerance(*spec, z_next, ctx)) tail = LambertTail{N, e->truncation_order};
    }
    notes.push_back("per-n integrals via the K_{1/2} reduction to G^{d+1,1}_{1,2d+1}");
  } else {
    spec = gaussian_spec(field, a);
    {
      WorkingPrecision wp(ctx.work_bits());
      C = Complex(freq * freq / (probe.beta() * Real(16L)));
      per_n_scale = pow(probe.beta(), -(a + Complex(2L)) / Real(4L)) / Real(2L);
    }
    if (N == 0) {
      const double log2_target = std::log2(ctx.target_rel_tol) - 20.0;
      const double c = C.re.to_double();
      N = 1;
      while (gaussian_log2_bound(field.degree, c * static_cast<double>(N) * static_cast<double>(N)) > log2_target) N *= 2;
    }
    notes.push_back("per-n integrals as G^{d+1,1}_{1,2d+2}(X_n^2/(16 beta)); series converges conditionally, "
                    "reported with its oscillation envelope");
  }
  r.terms_used = N;

  auto g = detail::parallel_terms(1, N, options.jobs, [&](long n) {
    Complex z;
    {
      WorkingPrecision wp(ctx.work_bits());
      z = C * Real(n) * Real(n);
    }
    return eval(*spec, z, ctx, {.allow_asymptotic = false, .cross_check = false}).value;
  });
  auto coef = detail::voronoi_coefficients(field, a, N, ctx);
  Complex tail_sum;
  if (exponential && tail) tail_sum = detail::lambert_tail_sum(field, *spec, a, C, *tail, 0, ctx);

  // Quadrature cross-check of the first per-n integral.
  if (exponential) {
    try {
      PrecisionContext qctx = ctx.at_precision(std::min<long>(ctx.precision_bits, 128));
      qctx.target_rel_tol = std::max(ctx.target_rel_tol, 1e-15);
      const KernelParams kp{field, [&] {
                              WorkingPrecision wp(ctx.work_bits());
                              return a / Real(2L);
                            }()};
      // Beyond t_cut the factor e^{-y t} is below every retained bit.
      const double t_cut = static_cast<double>(qctx.work_bits() + 64) * std::log(2.0) / probe.y().re.to_double() + 8.0;
      QuadratureResult q = integrate_halfline(
          [&](const Real& t) -> Complex {
            if (t.to_double() > t_cut) return Complex();
            WorkingPrecision wp(qctx.work_bits());
            return pow(t, a / Real(2L)) * kernel_value(kp, Complex(freq * t), qctx) * probe.value(t);
          },
          qctx);
      WorkingPrecision wp(ctx.work_bits());
      Complex reduced = per_n_scale * g[0];
      notes.push_back("n=1 integral by direct quadrature differs from the reduction by " +
                      sci((abs(q.value - reduced) / abs(reduced)).to_double()) + " (relative)");
    } catch (const Error& e) {
      notes.push_back(std::string("n=1 quadrature cross-check unavailable: ") + e.what());
    }
  }

  WorkingPrecision wp(ctx.work_bits());
  const Complex V = voronoi_constant(field, a) * per_n_scale;
  const Complex base = main_q.value - Z0 * probe.value_at_zero() / Real(2L);
  std::vector<long> checkpoints;
  for (long cp : {N / 4, N / 2, N})
    if (cp >= 1 && (checkpoints.empty() || checkpoints.back() != cp)) checkpoints.push_back(cp);
  Complex partial;
  double envelope = 0.0;
  std::size_t next_cp = 0;
  for (long n = 1; n <= N; ++n) {
    partial += coef[static_cast<std::size_t>(n)] * g[static_cast<std::size_t>(n - 1)];
    if (!exponential && 2 * n > N) {
      Complex res = r.lhs - (base + V * partial);
      envelope = std::max(envelope, abs(res).to_double());
    }
    if (next_cp < checkpoints.size() && checkpoints[next_cp] == n) {
      Complex res = r.lhs - (base + V * partial);
      r.residual_trace.emplace_back(n, res.rounded());
      ++next_cp;
    }
  }
  Complex rhs = base + V * (partial + tail_sum);
  if (exponential) {
    if (tail)
      notes.push_back("tail n>" + std::to_string(N) + " from the large-argument expansion to order " +
                      std::to_string(tail->order));
    else
      notes.push_back("no tail correction: n=" + std::to_string(N + 1) + " is below the asymptotic crossover");
  } else {
    notes.push_back("oscillation envelope max|residual| over N/2<n<=N: " + sci(envelope));
  }
  std::string trace = "residual trace:";
  for (const auto& [n, res] : r.residual_trace) trace += " N=" + std::to_string(n) + ": " + sci(res) + ";";
  if (!r.residual_trace.empty()) trace.pop_back();
  notes.push_back(trace);

  {
    WorkingPrecision out(ctx.precision_bits);
    r.rhs = rhs.rounded();
  }
  for (std::size_t i = 0; i < notes.size(); ++i) r.strategy += (i ? "; " : "") + notes[i];
  r.finalize_errors();
  return r;
}

VerificationReport verify_lambert(const NumberField& field, const Complex& a, const Complex& y,
                                  std::optional<long> continued_m, const PrecisionContext& ctx,
                                  const SeriesOptions& options) {
  VerificationReport r;
  r.identity = continued_m ? "lambert_continued" : "lambert";
  r.field = describe(field);
  r.params = {{"a", a}, {"y", y}};
  r.precision_bits = ctx.precision_bits;
  r.continuation_m = continued_m;
  SeriesValue lhs = lambert_lhs_series(field, a, y, ctx);
  SeriesValue rhs = continued_m ? lambert_rhs_continued_series(field, a, y, *continued_m, ctx, options)
                                : lambert_rhs_series(field, a, y, ctx, options);
  r.lhs = lhs.value;
  r.rhs = rhs.value;
  r.terms_used = rhs.terms;
  r.strategy = "lhs " + lhs.notes + "; rhs " + rhs.notes;
  r.finalize_errors();
  return r;
}

VerificationReport verify_koshliakov(const NumberField& field, const Complex& mu, const Complex& nu, const Complex& x,
                                     const PrecisionContext& ctx) {
  VerificationReport r;
  r.identity = "koshliakov";
  r.field = describe(field);
  r.params = {{"mu", mu}, {"nu", nu}, {"x", x}};
  r.precision_bits = ctx.precision_bits;
  QuadratureResult q = koshliakov_lhs_quadrature(field, mu, nu, x, ctx);
  r.lhs = q.value;
  r.rhs = koshliakov_rhs(field, mu, nu, x, ctx);
  r.terms_used = q.evaluations;
  std::vector<std::string> notes;
  notes.push_back("lhs by exp-sinh quadrature (" + std::to_string(q.levels) + " levels, " +
                  std::to_string(q.evaluations) + " nodes, error estimate " + sci(q.error_estimate.to_double()) + ")");
  if (kernel_is_experimental(field))
    notes.push_back("kernel by residue series at degree >= 3: experimental");
  else if (field.degree == 2 && field.r2 == 0)
    notes.push_back("kernel by confluent residue series");
  else
    notes.push_back("kernel by closed form");
  notes.push_back("rhs " + to_string(eval(koshliakov_spec(field, mu, nu), [&] {
                                           WorkingPrecision wp(ctx.work_bits());
                                           return x * x / Real(4L);
                                         }(),
                                         ctx)
                                        .strategy));
  if (field.degree == 1) {
    try {
      Complex f = koshliakov_rational_closed_form(mu, nu, x, ctx);
      WorkingPrecision wp(ctx.work_bits());
      notes.push_back("1F2 closed form differs from rhs by " + sci((abs(f - r.rhs) / abs(r.rhs)).to_double()));
    } catch (const Error& e) {
      notes.push_back(std::string("1F2 closed form unavailable: ") + e.what());
    }
  }
  if (field.degree == 2 && field.r2 == 1) {
    try {
      Complex g = kernel_eval({field, nu}, x, ctx);
      Complex derived = kernel_closed_form_imaginary_quadratic(nu, x, ctx, KernelVariant::Derived);
      Complex printed = kernel_closed_form_imaginary_quadratic(nu, x, ctx, KernelVariant::AsPrinted);
      WorkingPrecision wp(ctx.work_bits());
      notes.push_back("kernel at x: residue series " + sci(g) + ", closed form (+t3) " + sci(derived) +
                      ", closed form (-t3) " + sci(printed) + ", relative gaps " +
                      sci((abs(derived - g) / abs(g)).to_double()) + " and " +
                      sci((abs(printed - g) / abs(g)).to_double()));
    } catch (const Error& e) {
      notes.push_back(std::string("closed-form kernel comparison unavailable: ") + e.what());
    }
  }
  for (std::size_t i = 0; i < notes.size(); ++i) r.strategy += (i ? "; " : "") + notes[i];
  r.finalize_errors();
  return r;
}

}  // namespace nfv
