// Hurwitz zeta by Euler-Maclaurin summation.

#include <cmath>

#include "internal.hpp"
#include "nfv/numerics.hpp"

namespace nfv {

namespace {

// One Euler-Maclaurin evaluation with N direct terms; nullopt-like flag when the
// correction series starts to diverge before reaching the target.
bool euler_maclaurin(const Complex& s, const Real& alpha, long n_direct, detail::Attempt& out) {
  const long bits = working_precision();
  Complex sum;
  double scale = -INFINITY;
  Complex neg_s = -s;
  for (long n = 0; n < n_direct; ++n) {
    Real base = alpha + Real(n);
    Complex t = pow(base, neg_s);
    scale = std::max(scale, t.log2_abs());
    sum += t;
  }
  Real x = alpha + Real(n_direct);
  Complex one_minus_s = Complex(1L) - s;
  Complex x_pow = pow(x, one_minus_s);  // x^{1-s}
  Complex tail = x_pow / (s - Complex(1L));
  Complex half_term = x_pow / x;
  half_term.mul_2si(-1);
  tail += half_term;
  scale = std::max({scale, tail.log2_abs(), half_term.log2_abs()});
  Real inv_x2 = Real(1L) / (x * x);
  Complex power = x_pow / x;  // x^{-s}, times x^{-(2k-1)} below
  power /= x;                 // x^{-s-1}
  Complex poch = s.rounded();  // (s)_{2k-1} for k = 1
  auto bern = detail::bernoulli_reals(bits, 64);
  Real fact(2L);  // (2k)!
  double prev = INFINITY;
  const double base_mag = std::max((sum + tail).log2_abs(), scale - static_cast<double>(bits) / 2);
  for (long k = 1;; ++k) {
    if (static_cast<std::size_t>(k) > bern->size()) bern = detail::bernoulli_reals(bits, 2 * bern->size());
    Complex term = poch * power * ((*bern)[k - 1] / fact);
    double lt = term.log2_abs();
    if (lt > prev) return false;
    tail += term;
    scale = std::max(scale, lt);
    prev = lt;
    if (term.is_zero() || lt < base_mag - static_cast<double>(bits)) break;
    // (s)_{2k+1} = (s)_{2k-1} (s+2k-1)(s+2k)
    poch *= s + Complex(Real(2 * k - 1));
    poch *= s + Complex(Real(2 * k));
    power *= inv_x2;
    fact *= Real((2 * k + 1) * (2 * k + 2));
  }
  out.value = sum + tail;
  out.log2_scale = scale;
  return true;
}

}  // namespace

Complex hurwitz_zeta(const Complex& s, const Real& alpha, const PrecisionContext& ctx) {
  ctx.validate();
  if (!(alpha.sign() > 0) || alpha > Real(1L)) fail(ErrorKind::DomainError, "hurwitz_zeta needs alpha in (0, 1]");
  long n = 0;
  if (near_integer(s - Complex(1L), ctx.precision_bits, n) && n == 0) fail(ErrorKind::PoleError, "zeta pole at s = 1");
  const double abs_s = std::exp2(s.log2_abs());
  // Negative real parts make the direct terms grow; budget their size up front.
  double extra = 0.0;
  if (s.re.sign() < 0) extra = -s.re.to_double() * std::log2(0.11 * static_cast<double>(ctx.work_bits()) + abs_s + 6.0);
  return detail::with_escalation(
      ctx, extra,
      [&](long bits) {
        double x = 0.11 * static_cast<double>(bits) + abs_s + 5.0;
        for (int tries = 0; tries < 8; ++tries) {
          detail::Attempt a;
          if (euler_maclaurin(s, alpha, static_cast<long>(std::ceil(x)), a)) return a;
          x *= 2.0;
        }
        fail(ErrorKind::NoConvergence, "Euler-Maclaurin correction series");
      },
      "hurwitz_zeta");
}

Complex riemann_zeta(const Complex& s, const PrecisionContext& ctx) { return hurwitz_zeta(s, Real(1L), ctx); }

}  // namespace nfv
