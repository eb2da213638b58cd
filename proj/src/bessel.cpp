// Bessel functions J, Y, I, K of complex order and argument.
// Power series below the crossover radius, Hankel expansions above it.
// Integer-order Y and K are the average of the orders nu +- eps (eps = 2^{-(P+G)/2}).

#include <cmath>
#include <optional>

#include "internal.hpp"
#include "nfv/numerics.hpp"

namespace nfv {

namespace {

using detail::Attempt;

bool is_integer_valued(const Complex& nu, long& n) {
  if (!nu.im.is_zero() || !nu.re.is_integer()) return false;
  n = nu.re.to_long();
  return true;
}

// (z/2)^nu / Gamma(nu+1) * 0F1(; nu+1; sign z^2/4) at the current precision; sign = -1 for J, +1 for I.
Attempt series_ji(const Complex& nu, const Complex& z, int sign, long max_terms) {
  long n = 0;
  if (is_integer_valued(nu, n) && n < 0) {
    Attempt a = series_ji(-nu, z, sign, max_terms);
    if (sign < 0 && (n % 2 != 0)) a.value = -a.value;
    return a;
  }
  Complex half = z;
  half.mul_2si(-1);
  Complex pre = pow(half, nu) * detail::rgamma_raw(nu + Complex(1L));
  Complex arg = half * half;
  if (sign < 0) arg = -arg;
  Complex b = nu + Complex(1L);
  auto s = detail::pfq_series({}, std::span<const Complex>(&b, 1), arg, max_terms);
  Attempt out;
  out.value = pre * s.value;
  out.log2_scale = pre.log2_abs() + s.log2_max_term;
  return out;
}

// Y (sign=-1, from J) or K (sign=+1, from I) for non-integer order at the current precision.
Attempt reflection_yk(const Complex& nu, const Complex& z, int sign, long max_terms) {
  Attempt plus = series_ji(nu, z, sign, max_terms);
  Attempt minus = series_ji(-nu, z, sign, max_terms);
  Complex s = sin_pi(nu);
  Attempt out;
  if (sign < 0) {
    Complex c = cos_pi(nu);
    Complex first = plus.value * c;
    out.value = (first - minus.value) / s;
    out.log2_scale = std::max(plus.log2_scale + c.log2_abs(), minus.log2_scale) - s.log2_abs();
  } else {
    Complex scale(const_pi());
    scale.mul_2si(-1);
    out.value = scale * (minus.value - plus.value) / s;
    out.log2_scale = std::max(plus.log2_scale, minus.log2_scale) + scale.log2_abs() - s.log2_abs();
  }
  return out;
}

double series_extra_bits(const Complex& nu, const Complex& z, int sign) {
  Complex half = z;
  half.mul_2si(-1);
  Complex arg = half * half;
  if (sign < 0) arg = -arg;
  bool positive = arg.im.is_zero() && arg.re.sign() > 0 && nu.im.is_zero() && nu.re.to_double() > -1.0;
  if (positive) return 0.0;
  Complex b = nu + Complex(1L);
  double peak = detail::pfq_peak_log2({}, std::span<const Complex>(&b, 1), arg);
  // J of real argument is O(1/sqrt z); the peak itself is the loss estimate.
  return peak;
}

// Hankel expansions; nullopt when the expansion cannot reach the target accuracy.
std::optional<Attempt> hankel(BesselKind kind, const Complex& nu, const Complex& z, long bits) {
  if (z.re.sign() <= 0) return std::nullopt;
  Complex mu = nu * nu;
  mu.mul_2si(2);  // 4 nu^2
  Complex inv = Complex(1L) / z;
  std::vector<Complex> terms;  // a_k(nu) z^{-k}
  terms.emplace_back(1L);
  const double target = -static_cast<double>(bits);
  double prev = 0.0;
  bool converged = false;
  for (long k = 1; k < 4 * bits; ++k) {
    Complex factor = mu - Complex(Real((2 * k - 1) * (2 * k - 1)));
    factor /= Real(8 * k);
    Complex t = terms.back() * factor * inv;
    double lt = t.log2_abs();
    if (t.is_zero()) {
      converged = true;
      break;
    }
    if (lt > prev && k > 2) break;  // past the smallest term
    terms.push_back(std::move(t));
    prev = lt;
    if (lt < target) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::nullopt;
  Attempt out;
  Complex pi(const_pi());
  switch (kind) {
    case BesselKind::K: {
      Complex sum;
      for (const auto& t : terms) sum += t;
      Complex pre = sqrt(pi / (z * Complex(2L))) * exp(-z);
      out.value = pre * sum;
      out.log2_scale = out.value.log2_abs();
      break;
    }
    case BesselKind::I: {
      Complex sum;
      for (std::size_t k = 0; k < terms.size(); ++k) sum += (k % 2 == 0) ? terms[k] : -terms[k];
      Complex root = sqrt(Complex(2L) * pi * z);
      out.value = exp(z) * sum / root;
      // Exponentially small companion term, e^{-2 Re z} relative.
      if (2.0 * z.re.to_double() * detail::log2_e() < static_cast<double>(bits)) {
        Complex alt;
        for (const auto& t : terms) alt += t;
        Complex phase = z.im.sign() >= 0 ? Complex(Real(), Real(1L)) * exp(Complex(Real(), const_pi()) * nu)
                                         : Complex(Real(), Real(-1L)) * exp(Complex(Real(), -const_pi()) * nu);
        out.value += phase * exp(-z) * alt / root;
      }
      out.log2_scale = out.value.log2_abs();
      break;
    }
    case BesselKind::J:
    case BesselKind::Y: {
      Complex p, q;
      for (std::size_t k = 0; k < terms.size(); ++k) {
        bool neg = (k / 2) % 2 == 1;
        Complex t = neg ? -terms[k] : terms[k];
        if (k % 2 == 0)
          p += t;
        else
          q += t;
      }
      Complex omega = z - (nu * Complex(Real::rational(1, 2)) + Complex(Real::rational(1, 4))) * pi;
      Complex c = cos(omega), s = sin(omega);
      Complex pre = sqrt(Complex(2L) / (pi * z));
      Complex a1 = kind == BesselKind::J ? p * c : p * s;
      Complex a2 = kind == BesselKind::J ? -(q * s) : q * c;
      out.value = pre * (a1 + a2);
      out.log2_scale = pre.log2_abs() + std::max(a1.log2_abs(), a2.log2_abs());
      break;
    }
  }
  return out;
}

Complex series_path(BesselKind kind, const Complex& nu, const Complex& z, const PrecisionContext& ctx) {
  const int sign = (kind == BesselKind::J || kind == BesselKind::Y) ? -1 : 1;
  if (kind == BesselKind::J || kind == BesselKind::I) {
    return detail::with_escalation(
        ctx, series_extra_bits(nu, z, sign), [&](long) { return series_ji(nu, z, sign, ctx.max_terms); },
        "bessel series");
  }
  const long half_bits = (ctx.work_bits() + 1) / 2;
  long n = 0;
  const bool integral = near_integer(nu, half_bits + 1, n);
  double extra = std::max(series_extra_bits(nu, z, sign), series_extra_bits(-nu, z, sign));
  if (kind == BesselKind::K) extra += 2.0 * std::max(0.0, z.re.to_double()) * detail::log2_e();
  if (!integral) {
    return detail::with_escalation(
        ctx, extra, [&](long) { return reflection_yk(nu, z, sign, ctx.max_terms); }, "bessel reflection");
  }
  // Average of the orders nu + eps and nu - eps; O(eps^2) error, eps^-1 cancellation.
  extra += static_cast<double>(half_bits) + 8.0;
  return detail::with_escalation(
      ctx, extra,
      [&](long) {
        Real eps = epsilon_bits(half_bits);
        Complex up = nu + Complex(eps);
        Complex down = nu - Complex(eps);
        Attempt a = reflection_yk(up, z, sign, ctx.max_terms);
        Attempt b = reflection_yk(down, z, sign, ctx.max_terms);
        Attempt out;
        out.value = a.value + b.value;
        out.value.mul_2si(-1);
        out.log2_scale = std::max(a.log2_scale, b.log2_scale);
        return out;
      },
      "bessel integer order");
}

}  // namespace

double bessel_crossover_radius(const PrecisionContext& ctx) {
  return std::max(30.0, static_cast<double>(ctx.precision_bits) / 2.0);
}

Complex bessel(BesselKind kind, const Complex& order, const Complex& z, const PrecisionContext& ctx) {
  ctx.validate();
  if (!order.is_finite() || !z.is_finite()) fail(ErrorKind::DomainError, "non-finite Bessel input");
  if (z.is_zero()) {
    if (kind == BesselKind::Y || kind == BesselKind::K) fail(ErrorKind::DomainError, "Y and K are singular at z = 0");
    long n = 0;
    if (is_integer_valued(order, n) && n == 0) return Complex(1L);
    if (order.re.sign() > 0) return Complex();
    if (is_integer_valued(order, n)) return Complex();
    fail(ErrorKind::DomainError, "J and I of order with Re <= 0 are singular at z = 0");
  }
  const double radius = bessel_crossover_radius(ctx);
  if (std::exp2(z.log2_abs()) > radius && z.re.sign() > 0) {
    const long bits = ctx.work_bits() + static_cast<long>(std::ceil(std::max(0.0, z.log2_abs()))) + 8;
    std::optional<Attempt> a;
    {
      WorkingPrecision wp(bits);
      a = hankel(kind, order, z, bits);
      if (a) {
        double loss = a->log2_scale - a->value.log2_abs();
        if (loss > static_cast<double>(ctx.guard_bits) / 2) {
          // Near a zero of J or Y: redo with more bits while the expansion stays accurate.
          WorkingPrecision wp2(bits + static_cast<long>(std::ceil(loss)));
          a = hankel(kind, order, z, bits + static_cast<long>(std::ceil(loss)));
        }
      }
    }
    if (a) {
      WorkingPrecision wp(ctx.precision_bits);
      return a->value.rounded();
    }
  }
  return series_path(kind, order, z, ctx);
}

}  // namespace nfv
