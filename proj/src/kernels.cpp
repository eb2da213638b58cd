#include "nfv/kernels.hpp"

#include <cmath>

#include "meijer_internal.hpp"

namespace nfv {

namespace {

struct KernelLists {
  std::vector<Complex> first;   // b_1..b_{d+1}
  std::vector<Complex> second;  // b_{d+2}..b_{2d+2} without (1-nu)/2
};

// Enough bits that halving and adding 1 to a parameter are exact.
long exact_bits(const Complex& a, const Complex& b = Complex()) {
  return std::max({static_cast<long>(working_precision()), static_cast<long>(a.re.precision()),
                   static_cast<long>(a.im.precision()), static_cast<long>(b.re.precision()),
                   static_cast<long>(b.im.precision())}) +
         8;
}

KernelLists kernel_lists(const NumberField& f, const Complex& nu) {
  WorkingPrecision wp(exact_bits(nu));
  const Complex half_nu = nu / Real(2L);
  const Complex half_one_nu = (Complex(1L) + nu) / Real(2L);
  KernelLists l;
  l.first.push_back(-half_nu);
  for (int i = 0; i < f.r1 + f.r2; ++i) l.first.push_back(half_nu);
  for (int i = 0; i < f.r2; ++i) l.first.push_back(half_one_nu);
  for (int i = 0; i < f.r2; ++i) l.second.push_back(half_nu);
  for (int i = 0; i < f.r1 + f.r2; ++i) l.second.push_back(half_one_nu);
  return l;
}

void require_nonpole_order(const Complex& nu, long bits, const char* what) {
  long k = 0;
  if (detail::integer_gap(nu * Real(2L), bits, k)) fail(ErrorKind::PoleError, std::string(what) + ": 2 nu is an integer");
}

}  // namespace

MeijerGSpec kernel_spec(const KernelParams& params) {
  auto l = kernel_lists(params.field, params.nu);
  std::vector<Complex> b = std::move(l.first);
  const int m = static_cast<int>(b.size());
  {
    WorkingPrecision wp(exact_bits(params.nu));
    b.push_back((Complex(1L) - params.nu) / Real(2L));
  }
  for (auto& x : l.second) b.push_back(std::move(x));
  return MeijerGSpec(m, 0, {}, std::move(b));
}

Complex kernel_eval(const KernelParams& params, const Complex& x, const PrecisionContext& ctx) {
  ctx.validate();
  if (x.is_zero()) fail(ErrorKind::DomainError, "kernel at x = 0");
  Complex z;
  {
    WorkingPrecision wp(ctx.work_bits());
    z = x * x / Real(16L);
  }
  return eval(kernel_spec(params), z, ctx, {.allow_asymptotic = false, .cross_check = false}).value;
}

bool kernel_is_experimental(const NumberField& field) noexcept { return field.degree >= 3; }

Complex kernel_value(const KernelParams& params, const Complex& x, const PrecisionContext& ctx) {
  const NumberField& f = params.field;
  if (f.degree == 1) return kernel_closed_form_rational(params.nu, x, ctx);
  if (f.degree == 2 && f.r2 == 1) {
    long k = 0;
    Complex two_nu;
    {
      WorkingPrecision wp(ctx.work_bits());
      two_nu = params.nu * Real(2L);
    }
    if (!detail::integer_gap(two_nu, detail::confluence_bits(ctx), k))
      return kernel_closed_form_imaginary_quadratic(params.nu, x, ctx);
  }
  return kernel_eval(params, x, ctx);
}

Complex kernel_closed_form_rational(const Complex& nu, const Complex& w, const PrecisionContext& ctx) {
  ctx.validate();
  if (w.is_zero()) fail(ErrorKind::DomainError, "closed-form kernel at w = 0");
  return detail::with_escalation(
      ctx, 0.0,
      [&](long bits) {
        const PrecisionContext inner = ctx.at_precision(bits);
        const Complex X = sqrt(w) * Real(2L);
        const Complex order = nu * Real(2L);
        Complex k = bessel(BesselKind::K, order, X, inner) * (Real(2L) / const_pi());
        Complex y = bessel(BesselKind::Y, order, X, inner);
        Complex j = bessel(BesselKind::J, order, X, inner);
        Complex c = cos_pi(nu);
        Complex s = sin_pi(nu);
        Complex a = c * (k - y);
        Complex b = s * j;
        double scale = std::max({(c * k).log2_abs(), (c * y).log2_abs(), b.log2_abs()});
        return detail::Attempt{a - b, scale};
      },
      "kernel_closed_form_rational");
}

Complex kernel_closed_form_imaginary_quadratic(const Complex& nu, const Complex& w, const PrecisionContext& ctx,
                                               KernelVariant variant) {
  ctx.validate();
  if (w.is_zero()) fail(ErrorKind::DomainError, "closed-form kernel at w = 0");
  require_nonpole_order(nu, detail::confluence_bits(ctx), "kernel_closed_form_imaginary_quadratic");
  return detail::with_escalation(
      ctx, 0.0,
      [&](long bits) {
        const Complex one(1L);
        const Complex half = Complex(Real(1L) / Real(2L));
        const Complex three_halves = Complex(Real(3L) / Real(2L));
        const Complex Z = -(w * w) / Real(16L);
        const Complex q = w / Real(4L);
        const Real two(2L);
        auto term = [&](const Complex& pref, std::initializer_list<Complex> den) {
          std::vector<Complex> b(den);
          auto s = detail::pfq_series({}, b, Z, 1'000'000);
          return std::pair{pref * s.value, pref.log2_abs() + s.log2_max_term};
        };
        Complex r1 = detail::rgamma_raw(one - nu * two);
        auto [t1, s1] = term(pow(two, one - nu * Real(4L)) * r1 * r1 * pow(q, -nu),
                             {one - nu, one - nu, half - nu, half - nu, half});
        auto [t2, s2] = term(pow(two, one + nu * two) * cos_pi(nu) * detail::rgamma_raw(one + nu * two) * pow(q, nu),
                             {one + nu, half + nu, half, half, one});
        auto [t3, s3] = term(pow(two, Complex(4L) + nu * two) * sin_pi(nu) *
                                 detail::rgamma_raw(Complex(2L) + nu * two) * pow(q, one + nu),
                             {three_halves + nu, one + nu, three_halves, three_halves, one});
        Complex pref = sqrt(const_pi()) / sin_pi(nu * two);
        Complex sum = variant == KernelVariant::Derived ? t1 - t2 + t3 : t1 - t2 - t3;
        (void)bits;
        return detail::Attempt{pref * sum, pref.log2_abs() + std::max({s1, s2, s3})};
      },
      "kernel_closed_form_imaginary_quadratic");
}

MeijerGSpec koshliakov_spec(const NumberField& field, const Complex& mu, const Complex& nu) {
  auto l = kernel_lists(field, nu);
  std::vector<Complex> b = std::move(l.first);
  const int m = static_cast<int>(b.size());
  for (auto& x : l.second) b.push_back(std::move(x));
  Complex a;
  {
    WorkingPrecision wp(exact_bits(mu, nu));
    a = (Complex(1L) - mu * Real(2L) - nu) / Real(2L);
  }
  return MeijerGSpec(m, 1, {std::move(a)}, std::move(b));
}

void validate_koshliakov_inputs(const Complex& mu, const Complex& nu, const Complex& x) {
  const double lim = -0.5;
  if (!(mu.re.to_double() > lim && nu.re.to_double() > lim && (mu.re + nu.re).to_double() > lim))
    fail(ErrorKind::DomainError, "transform needs Re(mu), Re(nu), Re(mu + nu) > -1/2");
  if (x.is_zero()) fail(ErrorKind::DomainError, "transform at x = 0");
}

QuadratureResult koshliakov_lhs_quadrature(const NumberField& field, const Complex& mu, const Complex& nu,
                                           const Complex& x, const PrecisionContext& ctx) {
  ctx.validate();
  validate_koshliakov_inputs(mu, nu, x);
  const KernelParams params{field, nu};
  // Beyond t_cut the factor K_mu(t) ~ e^{-t} is below every retained bit.
  const double t_cut = static_cast<double>(ctx.work_bits() + 64) * std::log(2.0) + 8.0;
  const Complex power = mu + nu;
  auto f = [&](const Real& t) -> Complex {
    if (t.to_double() > t_cut) return Complex();
    const Complex tc(t);
    return bessel(BesselKind::K, mu, tc, ctx) * pow(tc, power) * kernel_value(params, x * tc, ctx);
  };
  return integrate_halfline(f, ctx);
}

Complex koshliakov_lhs(const NumberField& field, const Complex& mu, const Complex& nu, const Complex& x,
                       const PrecisionContext& ctx) {
  return koshliakov_lhs_quadrature(field, mu, nu, x, ctx).value;
}

Complex koshliakov_rhs(const NumberField& field, const Complex& mu, const Complex& nu, const Complex& x,
                       const PrecisionContext& ctx) {
  ctx.validate();
  validate_koshliakov_inputs(mu, nu, x);
  Complex z, scale;
  {
    WorkingPrecision wp(ctx.work_bits());
    z = x * x / Real(4L);
    scale = pow(Real(2L), mu + nu - Complex(1L));
  }
  Complex g = eval(koshliakov_spec(field, mu, nu), z, ctx).value;
  WorkingPrecision wp(ctx.precision_bits);
  return (g * scale).rounded();
}

Complex koshliakov_rational_closed_form(const Complex& mu, const Complex& nu, const Complex& x,
                                        const PrecisionContext& ctx) {
  ctx.validate();
  validate_koshliakov_inputs(mu, nu, x);
  {
    long k = 0;
    if (detail::integer_gap(nu, detail::confluence_bits(ctx), k))
      fail(ErrorKind::PoleError, "1F2 form needs a non-integer nu");
  }
  return detail::with_escalation(
      ctx, 0.0,
      [&](long) {
        const Complex one(1L);
        const Complex half = Complex(Real(1L) / Real(2L));
        const Complex z = x * x / Real(4L);
        const Complex xh = x / Real(2L);
        std::vector<Complex> a1{mu + half}, b1{half - nu, one - nu};
        std::vector<Complex> a2{mu + nu + half}, b2{half, one + nu};
        auto f1 = detail::pfq_series(a1, b1, z, 1'000'000);
        auto f2 = detail::pfq_series(a2, b2, z, 1'000'000);
        Complex p1 = pow(xh, -nu) * detail::gamma_raw(mu + half) * detail::rgamma_raw(one - nu) *
                     detail::rgamma_raw(half - nu);
        Complex p2 = pow(xh, nu) * detail::gamma_raw(mu + nu + half) * detail::rgamma_raw(one + nu) /
                     sqrt(const_pi());
        Complex pref = const_pi() * pow(Real(2L), mu + nu - one) / sin_pi(nu);
        double scale = pref.log2_abs() + std::max(p1.log2_abs() + f1.log2_max_term, p2.log2_abs() + f2.log2_max_term);
        return detail::Attempt{pref * (p1 * f1.value - p2 * f2.value), scale};
      },
      "koshliakov_rational_closed_form");
}

}  // namespace nfv
