// Gamma, reciprocal Gamma, log-Gamma and polygamma for complex arguments.
// Real arguments go through MPFR; complex ones through a shifted Stirling series.

#include <cmath>
#include <numbers>

#include "internal.hpp"
#include "nfv/numerics.hpp"

namespace nfv {
namespace detail {

namespace {

double stirling_radius(long bits) { return 0.2 * static_cast<double>(bits) + 10.0; }

void check_pole(const Complex& z, long bits) {
  long n = 0;
  if (z.re.sign() <= 0 && near_integer(z, bits, n) && n <= 0)
    fail(ErrorKind::PoleError, "Gamma pole at " + std::to_string(n));
}

// Principal log Gamma for Re w large enough that no shift is needed.
Complex stirling_sum(const Complex& w) {
  const long bits = working_precision();
  Complex value = (w - Complex(Real::rational(1, 2))) * log(w) - w;
  Real half_log_2pi = ldexp(log(ldexp(const_pi(), 1)), -1);
  value.re += half_log_2pi;
  Complex inv = Complex(1L) / w;
  Complex inv2 = inv * inv;
  Complex power = inv;
  auto coeffs = stirling_coefficients(bits, 64);
  const double target = value.log2_abs() - static_cast<double>(bits);
  for (std::size_t k = 1;; ++k) {
    if (k > coeffs->size()) coeffs = stirling_coefficients(bits, 2 * coeffs->size());
    Complex term = power * (*coeffs)[k - 1];
    value += term;
    if (term.log2_abs() < target) break;
    if (k > 4 * static_cast<std::size_t>(bits)) fail(ErrorKind::NoConvergence, "Stirling series");
    power *= inv2;
  }
  return value;
}

// Principal log Gamma for Re z >= 1/2.
Complex log_gamma_right(const Complex& z) {
  const long bits = working_precision();
  const double radius = stirling_radius(bits);
  const double x = z.re.to_double();
  const double y = z.im.to_double();
  long shift = 0;
  if (std::hypot(x, y) < radius) shift = static_cast<long>(std::ceil(radius - x));
  if (shift == 0) return stirling_sum(z);
  Complex product = z.rounded();
  double arg_sum = std::atan2(y, x);
  for (long k = 1; k < shift; ++k) {
    Complex factor = z + Complex(k);
    arg_sum += std::atan2(y, x + static_cast<double>(k));
    product *= factor;
  }
  Complex w = z + Complex(shift);
  Complex value = stirling_sum(w) - log(product);
  // log(product) is principal; restore the branch that sums the individual logs.
  double wrapped = arg_sum - std::atan2(product.im.to_double(), product.re.to_double());
  long turns = std::lround(wrapped / (2.0 * std::numbers::pi));
  if (turns != 0) value.im -= ldexp(const_pi(), 1) * Real(turns);
  return value;
}

}  // namespace

Complex log_gamma_raw(const Complex& z) {
  check_pole(z, working_precision());
  if (z.is_real()) {
    Real r;
    int sign = 1;
    mpfr_lgamma(r.get(), &sign, z.re.get(), MPFR_RNDN);
    return sign > 0 ? Complex(r) : Complex(r, const_pi());
  }
  if (z.re.to_double() >= 0.5) return log_gamma_right(z);
  // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
  Complex one_minus = Complex(1L) - z;
  return Complex(log(const_pi())) - log(sin_pi(z)) - log_gamma_right(one_minus);
}

Complex gamma_raw(const Complex& z) {
  check_pole(z, working_precision());
  if (z.is_real()) {
    Real r;
    mpfr_gamma(r.get(), z.re.get(), MPFR_RNDN);
    return Complex(r);
  }
  if (z.re.to_double() >= 0.5) return exp(log_gamma_right(z));
  Complex one_minus = Complex(1L) - z;
  return Complex(const_pi()) / (sin_pi(z) * exp(log_gamma_right(one_minus)));
}

Complex rgamma_raw(const Complex& z) {
  if (z.re.sign() <= 0 && z.im.is_zero() && z.re.is_integer()) return Complex();
  if (z.is_real()) {
    Real r;
    mpfr_gamma(r.get(), z.re.get(), MPFR_RNDN);
    return Complex(Real(1L) / r);
  }
  if (z.re.to_double() >= 0.5) return exp(-log_gamma_right(z));
  Complex one_minus = Complex(1L) - z;
  return sin_pi(z) * exp(log_gamma_right(one_minus)) / const_pi();
}

Complex polygamma_raw(int n, const Complex& z) {
  if (n < 0) fail(ErrorKind::DomainError, "polygamma order must be non-negative");
  check_pole(z, working_precision());
  if (n == 0 && z.is_real()) {
    Real r;
    mpfr_digamma(r.get(), z.re.get(), MPFR_RNDN);
    return Complex(r);
  }
  const long bits = working_precision();
  const double radius = stirling_radius(bits) + n;
  const double x = z.re.to_double();
  long shift = 0;
  if (std::hypot(x, z.im.to_double()) < radius || x < 0.5) shift = static_cast<long>(std::ceil(radius - x));
  shift = std::max<long>(shift, 0);
  Complex w = z + Complex(shift);
  Complex inv = Complex(1L) / w;
  Complex inv2 = inv * inv;
  auto bern = bernoulli_reals(bits, 64);
  Complex value;
  const double target_drop = static_cast<double>(bits);
  if (n == 0) {
    value = log(w) - ldexp(Real(1L), -1) * inv;
    Complex power = inv2;
    double lead = value.log2_abs();
    for (std::size_t k = 1;; ++k) {
      if (k > bern->size()) bern = bernoulli_reals(bits, 2 * bern->size());
      Complex term = power * ((*bern)[k - 1] / Real(static_cast<long>(2 * k)));
      value -= term;
      if (term.log2_abs() < lead - target_drop) break;
      if (k > 4 * static_cast<std::size_t>(bits)) fail(ErrorKind::NoConvergence, "digamma series");
      power *= inv2;
    }
  } else {
    // (-1)^{n+1} [ (n-1)!/w^n + n!/(2 w^{n+1}) + sum_k B_2k (2k+n-1)!/(2k)! w^{-2k-n} ]
    Real fact_nm1(1L);
    for (int j = 2; j < n; ++j) fact_nm1 *= Real(static_cast<long>(j));
    Complex inv_n = pow(inv, static_cast<long>(n));
    value = inv_n * fact_nm1;
    value += inv_n * inv * (fact_nm1 * Real(static_cast<long>(n)) / Real(2L));
    // ratio (2k+n-1)!/(2k)! built incrementally
    Real ratio(1L);  // k = 1: (n+1)!/2!
    for (int j = 3; j <= n + 1; ++j) ratio *= Real(static_cast<long>(j));
    Complex power = inv_n * inv2;
    double lead = value.log2_abs();
    for (std::size_t k = 1;; ++k) {
      if (k > bern->size()) bern = bernoulli_reals(bits, 2 * bern->size());
      if (k > 1) {
        // (2k+n-1)!/(2k)! = previous * (2k+n-2)(2k+n-1) / ((2k-1)(2k))
        long kk = static_cast<long>(k);
        ratio *= Real((2 * kk + n - 2) * (2 * kk + n - 1));
        ratio /= Real((2 * kk - 1) * (2 * kk));
      }
      Complex term = power * ((*bern)[k - 1] * ratio);
      value += term;
      if (term.log2_abs() < lead - target_drop) break;
      if (k > 4 * static_cast<std::size_t>(bits)) fail(ErrorKind::NoConvergence, "polygamma series");
      power *= inv2;
    }
    if (n % 2 == 0) value = -value;
  }
  if (shift > 0) {
    Complex correction;
    Complex zk = z.rounded();
    for (long k = 0; k < shift; ++k) {
      Complex invk = Complex(1L) / zk;
      correction += n == 0 ? invk : pow(invk, static_cast<long>(n + 1));
      zk.re += Real(1L);
    }
    if (n > 0) {
      Real fact_n(1L);
      for (int j = 2; j <= n; ++j) fact_n *= Real(static_cast<long>(j));
      correction *= fact_n;
      if (n % 2 == 1) correction = -correction;
    }
    value -= correction;
  }
  return value;
}

}  // namespace detail

namespace {
long gamma_extra_bits(const Complex& z) {
  double m = std::max(1.0, std::exp2(std::min(60.0, z.log2_abs())));
  return static_cast<long>(std::ceil(std::log2(m * (std::log(m) + 1.0) + 1.0))) + 8;
}

void pole_guard(const Complex& z, const PrecisionContext& ctx) {
  long n = 0;
  if (z.re.sign() <= 0 && near_integer(z, ctx.precision_bits, n) && n <= 0)
    fail(ErrorKind::PoleError, "Gamma pole at " + std::to_string(n));
}

template <class F>
Complex at_work_precision(const PrecisionContext& ctx, long extra, F&& f) {
  Complex out;
  {
    WorkingPrecision wp(ctx.work_bits() + extra);
    out = f();
  }
  WorkingPrecision wp(ctx.precision_bits);
  return out.rounded();
}
}  // namespace

Complex gamma(const Complex& z, const PrecisionContext& ctx) {
  pole_guard(z, ctx);
  return at_work_precision(ctx, gamma_extra_bits(z), [&] { return detail::gamma_raw(z); });
}

Complex log_gamma(const Complex& z, const PrecisionContext& ctx) {
  pole_guard(z, ctx);
  return at_work_precision(ctx, 8, [&] { return detail::log_gamma_raw(z); });
}

Complex rgamma(const Complex& z, const PrecisionContext& ctx) {
  return at_work_precision(ctx, gamma_extra_bits(z), [&] { return detail::rgamma_raw(z); });
}

Complex polygamma(int n, const Complex& z, const PrecisionContext& ctx) {
  pole_guard(z, ctx);
  return at_work_precision(ctx, 16 + n, [&] { return detail::polygamma_raw(n, z); });
}

Complex pochhammer(const Complex& a, long n) {
  if (n < 0) fail(ErrorKind::DomainError, "pochhammer length must be non-negative");
  Complex result(1L);
  Complex factor = a.rounded();
  for (long k = 0; k < n; ++k) {
    result *= factor;
    factor.re += Real(1L);
  }
  return result;
}

}  // namespace nfv
