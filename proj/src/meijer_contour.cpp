// Mellin-Barnes line integral for Meijer G, and the K-Bessel Mellin pair.

#include <numbers>

#include "meijer_internal.hpp"
#include "nfv/numerics.hpp"

namespace nfv {

Complex eval_contour(const MeijerGSpec& spec, const Complex& z, const PrecisionContext& ctx) {
  ctx.validate();
  (void)validate_spec(spec);
  if (spec.delta() <= 0.0)
    fail(ErrorKind::MarginalConvergence, "delta = " + std::to_string(spec.delta()) +
                                             " <= 0: line integral not absolutely convergent, use residue series");
  if (z.is_zero()) fail(ErrorKind::DomainError, "Meijer G line integral at z = 0");
  const double arg_z = std::atan2(z.im.to_double(), z.re.to_double());
  if (std::fabs(arg_z) >= spec.delta() * std::numbers::pi)
    fail(ErrorKind::DomainError, "line integral needs |arg z| < delta pi");
  const auto& a = spec.a();
  const auto& b = spec.b();
  double upper = INFINITY, lower = -INFINITY;
  for (int j = 0; j < spec.m(); ++j) upper = std::min(upper, b[static_cast<std::size_t>(j)].re.to_double());
  for (int j = 0; j < spec.n(); ++j) lower = std::max(lower, a[static_cast<std::size_t>(j)].re.to_double() - 1.0);
  if (!(lower < upper)) fail(ErrorKind::InvalidSpec, "no vertical line separates the a- and b-pole families");
  const double c = std::isfinite(lower) ? 0.5 * (lower + upper) : upper - 0.5;
  const double half_gap = std::isfinite(lower) ? 0.5 * (upper - lower) : 0.5;

  VerticalLineOptions opt;
  opt.strip_half_width = std::min(2.0, 0.8 * half_gap);
  opt.conjugate_symmetric = spec.real_parameters() && z.im.is_zero() && z.re.sign() > 0;
  const long bits = ctx.work_bits();
  Complex log_z;
  {
    WorkingPrecision wp(bits);
    log_z = log(z);
  }
  auto integrand = [&](const Complex& s) {
    Complex acc = s * log_z;
    for (int j = 0; j < spec.q(); ++j) {
      const Complex& bj = b[static_cast<std::size_t>(j)];
      if (j < spec.m())
        acc += detail::log_gamma_raw(bj - s);
      else
        acc -= detail::log_gamma_raw(Complex(1L) - bj + s);
    }
    for (int j = 0; j < spec.p(); ++j) {
      const Complex& aj = a[static_cast<std::size_t>(j)];
      if (j < spec.n())
        acc += detail::log_gamma_raw(Complex(1L) - aj + s);
      else
        acc -= detail::log_gamma_raw(aj - s);
    }
    return exp(acc);
  };
  Real abscissa;
  {
    WorkingPrecision wp(bits);
    abscissa = Real(c);
  }
  auto r = integrate_vertical_line(integrand, abscissa, ctx, opt);
  WorkingPrecision wp(bits);
  Complex two_pi_i(Real(), ldexp(const_pi(), 1));
  Complex v = r.value / two_pi_i;
  WorkingPrecision out(ctx.precision_bits);
  return v.rounded();
}

Complex mellin_k_bessel(const Complex& mu, const Complex& nu, const Complex& s, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionContext inner = ctx.at_precision(ctx.precision_bits + 16);
  Complex v;
  {
    WorkingPrecision wp(inner.work_bits());
    Complex g1 = gamma((s + nu) * Complex(Real::rational(1, 2)), inner);
    Complex g2 = gamma((mu + mu + nu + s) * Complex(Real::rational(1, 2)), inner);
    v = pow(Real(2L), mu + nu + s - Complex(2L)) * g1 * g2;
  }
  WorkingPrecision out(ctx.precision_bits);
  return v.rounded();
}

}  // namespace nfv
