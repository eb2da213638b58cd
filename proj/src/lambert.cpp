#include <cmath>
#include <numbers>
#include <sstream>

#include "identities_internal.hpp"
#include "nfv/kernels.hpp"
#include "nfv/numerics.hpp"
#include "parallel.hpp"

namespace nfv {

namespace detail {

namespace {

bool near_integer_value(const Complex& a, double tol, long& k) {
  const double re = a.re.to_double();
  k = std::lround(re);
  return std::fabs(a.im.to_double()) < tol && std::fabs(re - static_cast<double>(k)) < tol;
}

void require_right_half_plane(const Complex& y) {
  if (!(y.re.to_double() > 0.0)) fail(ErrorKind::DomainError, "needs Re y > 0");
}

void require_sector(const Complex& y) {
  require_right_half_plane(y);
  const double arg = std::atan2(y.im.to_double(), y.re.to_double());
  if (std::fabs(arg) >= std::numbers::pi / 4)
    fail(ErrorKind::DomainError, "transformed side supports |arg y| < pi/4 only");
}

Real real_of(long v) { return Real(v); }

}  // namespace

void guard_lambert_parameter(const Complex& a) {
  long k = 0;
  if (near_integer_value(a, 1e-6, k) && k % 2 == 0)
    fail(ErrorKind::SingularParameter, "a within 1e-6 of an even integer: the transformation constants are singular");
}

Complex lambert_main_terms(const NumberField& field, const Complex& a, const Complex& y, const PrecisionContext& ctx) {
  const Complex one(1L);
  Complex zk1 = dedekind_zeta(field, one - a, ctx);
  Complex zk0 = dedekind_zeta(field, -a, ctx);
  Complex g = gamma(a + one, ctx);
  Complex z = riemann_zeta(a + one, ctx);
  Real h = field.residue_H(ctx.at_precision(ctx.work_bits()));
  WorkingPrecision wp(ctx.work_bits());
  return zk1 / y - zk0 / Real(2L) + g * z * h / pow(y, a + one);
}

Complex lambert_prefactor(const NumberField& field, const Complex& a, const Complex& y, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.work_bits());
  const Complex one(1L);
  const Complex half_a = a / Real(2L);
  const Real d = real_of(field.degree);
  Complex v = pow(Real(2L), one + half_a);
  v *= pow(const_pi(), (a + (one - a) * d) / Real(2L));
  v *= pow(real_of(field.abs_discriminant), (a - one) / Real(2L));
  v /= pow(y, one + half_a);
  return v;
}

Complex lambert_scale(const NumberField& field, const Complex& y, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.work_bits());
  Real pi_pow = pow(const_pi(), Real(2L * (field.degree + 1)));
  Real dd = real_of(field.abs_discriminant);
  return Complex(pi_pow * Real(4L) / (dd * dd)) / (y * y);
}

LambertTail lambert_crossover(const MeijerGSpec& spec, const Complex& C, const PrecisionContext& ctx, long max_n0) {
  auto try_at = [&](long n0) -> std::optional<long> {
    Complex z;
    {
      WorkingPrecision wp(ctx.work_bits());
      z = C * Real(n0 + 1) * Real(n0 + 1);
    }
    auto e = asymptotic_to_tolerance(spec, z, ctx);
    if (!e) return std::nullopt;
    return e->truncation_order;
  };
  long hi = 1;
  std::optional<long> order = try_at(hi);
  while (!order) {
    if (hi >= max_n0) fail(ErrorKind::NoConvergence, "Lambert series: no asymptotic crossover below the head cap");
    hi = std::min(max_n0, hi * 2);
    order = try_at(hi);
  }
  long lo = hi / 2;  // fails (or zero)
  while (hi - lo > 1 && lo >= 1) {
    long mid = (lo + hi) / 2;
    if (auto o = try_at(mid)) {
      hi = mid;
      order = o;
    } else {
      lo = mid;
    }
  }
  return {hi, *order};
}

Complex lambert_tail_sum(const NumberField& field, const MeijerGSpec& spec, const Complex& a, const Complex& C,
                         const LambertTail& tail, long k_first, const PrecisionContext& ctx) {
  if (tail.order < k_first) return Complex();
  const PrecisionContext wctx = ctx.at_precision(ctx.work_bits());
  std::vector<Complex> zeta_products;
  for (long k = k_first; k <= tail.order; ++k) {
    const Complex s(Real(2 * k + 2));
    zeta_products.push_back(riemann_zeta(s, wctx) * dedekind_zeta(field, s + a, wctx));
  }
  std::vector<Complex> coef;
  for (long k = k_first; k <= tail.order; ++k) coef.push_back(asymptotic_coefficient(spec, k, wctx));
  WorkingPrecision wp(ctx.work_bits());
  auto sigma = divisor_sigma_range(field, -a, tail.n0);
  const Complex a1 = spec.a()[0];
  Complex total;
  for (long k = k_first; k <= tail.order; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - k_first);
    Complex head;
    for (long n = 1; n <= tail.n0; ++n) {
      Real nn(n);
      head += sigma[static_cast<std::size_t>(n)] * pow(Complex(nn), -(2 * k + 2));
    }
    total += coef[i] * pow(C, a1 - Complex(Real(k + 1))) * (zeta_products[i] - head);
  }
  return total;
}

std::vector<Complex> lambert_head_values(const MeijerGSpec& spec, const Complex& C, long n0, int jobs,
                                         const PrecisionContext& ctx) {
  return parallel_terms(1, n0, jobs, [&](long n) {
    Complex z;
    {
      WorkingPrecision wp(ctx.work_bits());
      z = C * Real(n) * Real(n);
    }
    return eval(spec, z, ctx, {.allow_asymptotic = false, .cross_check = false}).value;
  });
}

std::vector<Complex> voronoi_coefficients(const NumberField& field, const Complex& a, long n_max,
                                          const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.work_bits());
  auto sigma = divisor_sigma_range(field, -a, n_max);
  const Complex half_a = a / Real(2L);
  for (long n = 1; n <= n_max; ++n) sigma[static_cast<std::size_t>(n)] *= pow(Real(n), half_a);
  return sigma;
}

}  // namespace detail

namespace {

constexpr long kMaxHead = 20'000;

// Closed-form large-n coefficients L_k with A_m(n) = sum_{k<=m} L_k n^{-a/2-2-2k}.
std::vector<Complex> expansion_coefficients(const NumberField& field, const Complex& a, const Complex& y, long m,
                                            const PrecisionContext& ctx) {
  const int d = field.degree;
  const Complex one(1L);
  std::vector<Complex> rg;
  for (long k = 0; k <= m; ++k) rg.push_back(rgamma(-one - a - Complex(Real(2 * k)), ctx.at_precision(ctx.work_bits())));
  WorkingPrecision wp(ctx.work_bits());
  const Real pi = const_pi();
  const Real dd(field.abs_discriminant);
  const Complex half_pi_a = a / Real(2L);
  Complex s = sin_pi(half_pi_a);
  Complex c = cos_pi(half_pi_a);
  Complex pref = pow(pi, Complex(Real(d) / Real(2L)));
  pref *= pow(Real(2L), -(a + Complex(2L)) * Real(d));
  pref /= pow(s, static_cast<long>(field.r1 + field.r2)) * pow(c, static_cast<long>(field.r2));
  if (field.r1 % 2 != 0) pref = -pref;
  Complex base = pow(Complex(pow(pi, Real(d + 1)) * Real(2L) / dd) / y, -half_pi_a - Complex(2L));
  Complex step = Complex(pow(pi * Real(2L), Real(d + 1)) / dd) / y;  // (2 pi)^{d+1} / (y D)
  Complex step_inv2 = one / (step * step);
  std::vector<Complex> out;
  Complex power(1L);
  for (long k = 0; k <= m; ++k) {
    Complex t = pref * base * pow(rg[static_cast<std::size_t>(k)], static_cast<long>(d)) * power;
    // (-1)^k from the series, (e^{-i pi d/2})^{-2k} = (-1)^{dk}
    if ((k + static_cast<long>(d) * k) % 2 != 0) t = -t;
    out.push_back(std::move(t));
    power *= step_inv2;
  }
  return out;
}

Complex expansion_value(const std::vector<Complex>& L, const Complex& a, long n) {
  Complex total;
  const Real nn(n);
  Complex p = pow(nn, -(a / Real(2L)) - Complex(2L));
  Real inv2 = Real(1L) / (nn * nn);
  for (const auto& l : L) {
    total += l * p;
    p *= inv2;
  }
  return total;
}

void require_continuation(const NumberField& field) {
  if (!field.has_continuation())
    fail(ErrorKind::ContinuationUnavailable, "the transformed side needs zeta_K off Re s > 1, unavailable for table fields");
}

std::string tail_note(const detail::LambertTail& t) {
  std::ostringstream os;
  os << "head n<=" << t.n0 << " by residue series; tail n>" << t.n0 << " from the large-argument expansion to order "
     << t.order << " summed in closed form via zeta(2k+2) zeta_K(2k+2+a)";
  return os.str();
}

}  // namespace

MeijerGSpec lambert_spec(const NumberField& field, const Complex& a) {
  Complex nu;
  {
    WorkingPrecision wp(std::max<long>(working_precision(), std::max(a.re.precision(), a.im.precision()) + 8));
    nu = a / Real(2L);
  }
  return koshliakov_spec(field, Complex(Real(1L) / Real(2L)), nu);
}

Complex lambert_argument(const NumberField& field, const Complex& y, long n, const PrecisionContext& ctx) {
  Complex C = detail::lambert_scale(field, y, ctx);
  WorkingPrecision wp(ctx.precision_bits);
  return (C * Real(n) * Real(n)).rounded();
}

SeriesValue lambert_lhs_series(const NumberField& field, const Complex& a, const Complex& y, const PrecisionContext& ctx) {
  ctx.validate();
  detail::require_right_half_plane(y);
  const double ry = y.re.to_double();
  const double c = 2.0 + std::fabs(a.re.to_double());
  const double log_target = std::log(ctx.target_rel_tol) - ry - 3.0;
  // Tail bound sum_{n>N} n^c e^{-n ry} <= (N+1)^c e^{-(N+1) ry} / (1 - q), q = e^{-ry} (1 + 1/(N+1))^c.
  long N = 1;
  for (;; ++N) {
    const double n1 = static_cast<double>(N + 1);
    const double q = std::exp(-ry) * std::pow(1.0 + 1.0 / n1, c);
    if (q < 0.9 && c * std::log(n1) - n1 * ry - std::log(1.0 - q) < log_target) break;
    if (N > 100'000'000) fail(ErrorKind::NoConvergence, "Lambert series: y too small for direct summation");
  }
  Complex v = detail::with_escalation(
      ctx, 0.0,
      [&](long) {
        auto sigma = divisor_sigma_range(field, a, N);
        Complex q = exp(-y);
        Complex p = q;
        Complex total;
        double scale = -INFINITY;
        for (long n = 1; n <= N; ++n) {
          Complex t = sigma[static_cast<std::size_t>(n)] * p;
          scale = std::max(scale, t.log2_abs());
          total += t;
          p *= q;
        }
        return detail::Attempt{std::move(total), scale};
      },
      "lambert_lhs");
  return {std::move(v), N, "direct sum to n=" + std::to_string(N) + " (tail bound n^{2+|Re a|} e^{-n Re y})"};
}

void validate_lambert_inputs(const NumberField& field, const Complex& a, const Complex& y,
                             std::optional<long> continued_m) {
  require_continuation(field);
  detail::require_sector(y);
  if (!continued_m) {
    if (!(a.re.to_double() > -1.0)) fail(ErrorKind::DomainError, "transformed side needs Re a > -1");
    detail::guard_lambert_parameter(a);
    return;
  }
  const long m = *continued_m;
  if (m < 0) fail(ErrorKind::DomainError, "continuation order m must be non-negative");
  if (!(a.re.to_double() > static_cast<double>(-2 * m - 3)))
    fail(ErrorKind::DomainError, "continued side needs Re a > -2m - 3");
  detail::guard_lambert_parameter(a);
  long k = 0;
  if (detail::near_integer_value(a, 1e-6, k) && k < 0)
    fail(ErrorKind::SingularParameter, "a within 1e-6 of a negative integer: Gamma(a+1) or zeta_K has a pole");
  if (detail::near_integer_value(a, 1e-6, k) && field.r2 > 0)
    fail(ErrorKind::SingularParameter, "a within 1e-6 of an odd integer: cos(pi a/2) vanishes");
}

Complex lambert_lhs(const NumberField& field, const Complex& a, const Complex& y, const PrecisionContext& ctx) {
  return lambert_lhs_series(field, a, y, ctx).value;
}

SeriesValue lambert_rhs_series(const NumberField& field, const Complex& a, const Complex& y, const PrecisionContext& ctx,
                               const SeriesOptions& options) {
  ctx.validate();
  validate_lambert_inputs(field, a, y, std::nullopt);
  const MeijerGSpec spec = lambert_spec(field, a);
  const Complex C = detail::lambert_scale(field, y, ctx);
  const auto tail = detail::lambert_crossover(spec, C, ctx, kMaxHead);
  const auto g = detail::lambert_head_values(spec, C, tail.n0, options.jobs, ctx);
  const auto coef = detail::voronoi_coefficients(field, a, tail.n0, ctx);
  Complex tail_sum = detail::lambert_tail_sum(field, spec, a, C, tail, 0, ctx);
  Complex main = detail::lambert_main_terms(field, a, y, ctx);
  Complex P = detail::lambert_prefactor(field, a, y, ctx);
  WorkingPrecision wp(ctx.work_bits());
  Complex series;
  for (long n = 1; n <= tail.n0; ++n) series += coef[static_cast<std::size_t>(n)] * g[static_cast<std::size_t>(n - 1)];
  Complex total = main + P * (series + tail_sum);
  WorkingPrecision out(ctx.precision_bits);
  return {total.rounded(), tail.n0, tail_note(tail)};
}

Complex lambert_rhs(const NumberField& field, const Complex& a, const Complex& y, const PrecisionContext& ctx) {
  return lambert_rhs_series(field, a, y, ctx).value;
}

SeriesValue lambert_rhs_continued_series(const NumberField& field, const Complex& a, const Complex& y, long m,
                                         const PrecisionContext& ctx, const SeriesOptions& options) {
  ctx.validate();
  validate_lambert_inputs(field, a, y, m);
  const MeijerGSpec spec = lambert_spec(field, a);
  const Complex C = detail::lambert_scale(field, y, ctx);
  const auto tail = detail::lambert_crossover(spec, C, ctx, kMaxHead);
  const auto g = detail::lambert_head_values(spec, C, tail.n0, options.jobs, ctx);
  const auto coef = detail::voronoi_coefficients(field, a, tail.n0, ctx);
  const auto L = expansion_coefficients(field, a, y, m, ctx);
  Complex tail_sum = detail::lambert_tail_sum(field, spec, a, C, tail, m + 1, ctx);
  std::vector<Complex> zeta_products;
  {
    const PrecisionContext wctx = ctx.at_precision(ctx.work_bits());
    for (long k = 0; k <= m; ++k) {
      const Complex s(Real(2 * k + 2));
      zeta_products.push_back(riemann_zeta(s, wctx) * dedekind_zeta(field, s + a, wctx));
    }
  }
  Complex main = detail::lambert_main_terms(field, a, y, ctx);
  Complex P = detail::lambert_prefactor(field, a, y, ctx);
  WorkingPrecision wp(ctx.work_bits());
  Complex series;
  for (long n = 1; n <= tail.n0; ++n)
    series += coef[static_cast<std::size_t>(n)] * (g[static_cast<std::size_t>(n - 1)] - expansion_value(L, a, n));
  Complex close;
  for (long k = 0; k <= m; ++k) close += L[static_cast<std::size_t>(k)] * zeta_products[static_cast<std::size_t>(k)];
  Complex total = main + P * (series + tail_sum + close);
  WorkingPrecision out(ctx.precision_bits);
  return {total.rounded(), tail.n0,
          tail_note(tail) + "; first " + std::to_string(m + 1) +
              " large-n terms subtracted per n and restored through the closing zeta sum"};
}

Complex lambert_rhs_continued(const NumberField& field, const Complex& a, const Complex& y, long m,
                              const PrecisionContext& ctx) {
  return lambert_rhs_continued_series(field, a, y, m, ctx).value;
}

Complex lambert_g_asymptotic(const NumberField& field, const Complex& a, const Complex& y, long n, long m,
                             const PrecisionContext& ctx) {
  ctx.validate();
  if (n < 1 || m < 0) fail(ErrorKind::DomainError, "needs n >= 1 and m >= 0");
  detail::guard_lambert_parameter(a);
  const auto L = expansion_coefficients(field, a, y, m, ctx);
  WorkingPrecision wp(ctx.work_bits());
  Complex v = expansion_value(L, a, n);
  WorkingPrecision out(ctx.precision_bits);
  return v.rounded();
}

GAsymptoticCheck g_asymptotic_check(const NumberField& field, const Complex& a, const Complex& y, long n, long m,
                                    const PrecisionContext& ctx) {
  ctx.validate();
  detail::require_right_half_plane(y);
  GAsymptoticCheck r;
  r.value = eval(lambert_spec(field, a), lambert_argument(field, y, n, ctx.at_precision(ctx.work_bits())), ctx,
                 {.allow_asymptotic = false, .cross_check = false})
                .value;
  r.truncated = lambert_g_asymptotic(field, a, y, n, m, ctx);
  WorkingPrecision wp(ctx.work_bits());
  r.error = abs(r.value - r.truncated);
  return r;
}

}  // namespace nfv
