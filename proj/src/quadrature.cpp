// Double-exponential quadrature on (0, inf) and trapezoidal quadrature on vertical lines.

#include <cmath>
#include <numbers>

#include "internal.hpp"
#include "nfv/numerics.hpp"

namespace nfv {

namespace {

struct Node {
  Real t;
  Real weight;  // dt/du
};

// exp-sinh map: t = exp(pi/2 sinh u), dt/du = pi/2 cosh u * t.
Node exp_sinh_node(const Real& u) {
  Real half_pi = ldexp(const_pi(), -1);
  Real t = exp(half_pi * sinh(u));
  Real w = half_pi * cosh(u) * t;
  return {std::move(t), std::move(w)};
}

double log2_tol(double tol) { return std::log2(tol); }

}  // namespace

QuadratureResult integrate_halfline(const HalfLineIntegrand& f, const PrecisionContext& ctx,
                                    const HalfLineOptions& options) {
  ctx.validate();
  const double tol = options.rel_tol > 0.0 ? options.rel_tol : ctx.target_rel_tol;
  const long bits = ctx.work_bits();
  WorkingPrecision wp(bits);
  QuadratureResult result;
  // Tail truncation: stop a direction after three consecutive negligible contributions.
  const double trunc_drop = log2_tol(tol) - 12.0;
  const double u_limit = std::asinh(2.0 * static_cast<double>(bits) * 0.6931471805599453 / std::numbers::pi) + 1.0;

  auto contribution = [&](double u) -> Complex {
    Node node = exp_sinh_node(Real(u));
    if (!node.t.is_finite() || node.t.is_zero()) return Complex();
    Complex v = f(node.t);
    ++result.evaluations;
    if (!v.is_finite()) fail(ErrorKind::NoConvergence, "non-finite integrand value");
    v *= node.weight;
    return v;
  };

  // Sum over u = offset + j*step, j >= 0, in one direction, until negligible.
  auto march = [&](double start, double step, const Complex& reference) -> Complex {
    Complex acc;
    int small = 0;
    for (double u = start; std::fabs(u) <= u_limit + 8.0; u += step) {
      Complex c = contribution(u);
      acc += c;
      double ref = std::max(reference.log2_abs(), acc.log2_abs());
      if (!std::isfinite(ref)) ref = -static_cast<double>(bits);
      if (c.is_zero() || c.log2_abs() < ref + trunc_drop) {
        if (++small >= 3) break;
      } else {
        small = 0;
      }
    }
    return acc;
  };

  double h = options.initial_step;
  Complex level_sum = contribution(0.0);
  Complex right = march(h, h, level_sum);
  Complex left = march(-h, -h, level_sum);
  level_sum += right + left;
  Complex estimate = level_sum * Real(h);
  for (int level = 1; level <= options.max_levels; ++level) {
    h /= 2.0;
    Complex odd = march(h, 2.0 * h, estimate) + march(-h, -2.0 * h, estimate);
    Complex next = estimate;
    next.mul_2si(-1);
    next += odd * Real(h);
    Real diff = abs(next - estimate);
    estimate = std::move(next);
    result.levels = level;
    Real scale = abs(estimate);
    Real bound = scale * Real(tol) + Real(options.abs_tol);
    if (level >= 2 && diff <= bound) {
      result.error_estimate = diff;
      WorkingPrecision out(ctx.precision_bits);
      result.value = estimate.rounded();
      return result;
    }
    result.error_estimate = diff;
  }
  fail(ErrorKind::NoConvergence, "half-line quadrature did not settle within the level cap");
}

QuadratureResult integrate_vertical_line(const LineIntegrand& g, const Real& c, const PrecisionContext& ctx,
                                         const VerticalLineOptions& options) {
  ctx.validate();
  const long bits = ctx.work_bits();
  WorkingPrecision wp(bits);
  QuadratureResult result;
  const double tol = ctx.target_rel_tol;
  const double target_bits = -std::log2(tol) + 12.0;

  auto eval = [&](const Real& t) {
    ++result.evaluations;
    Complex v = g(Complex(c, t));
    if (!v.is_finite()) fail(ErrorKind::NoConvergence, "non-finite contour integrand");
    return v;
  };

  // Reference magnitude near the real axis, then find T where |g| has dropped by target_bits.
  double ref = -INFINITY;
  for (double t : {0.0, 0.5, 1.0, -0.5, -1.0}) ref = std::max(ref, eval(Real(t)).log2_abs());
  if (!std::isfinite(ref)) {
    result.value = Complex();
    result.error_estimate = Real();
    return result;
  }
  const double t_cap = 1u << 14;
  double span = 2.0;
  for (;; span *= 2.0) {
    if (span > t_cap) fail(ErrorKind::SlowDecay, "contour integrand does not decay exponentially");
    double hi = std::max(eval(Real(span)).log2_abs(), options.conjugate_symmetric ? -INFINITY : eval(Real(-span)).log2_abs());
    if (hi < ref - target_bits) break;
    // Sub-exponential decay test: a doubling of the abscissa must buy a growing drop.
    if (span >= 256.0) {
      double lo = std::max(eval(Real(span / 2)).log2_abs(), options.conjugate_symmetric ? -INFINITY : eval(Real(-span / 2)).log2_abs());
      if (lo - hi < 0.05 * span) fail(ErrorKind::SlowDecay, "contour integrand decays sub-exponentially");
    }
  }

  const double d = std::max(options.strip_half_width, 1e-3);
  // Step chosen so the coarse level (2h) already meets the target: e^{-2 pi d/(2h)} ~ 2^{-target_bits}.
  double h = std::numbers::pi * d / (target_bits * 0.6931471805599453 + 3.0);
  // Dyadic step keeps every node k*h exact in double arithmetic.
  h = std::exp2(std::floor(std::log2(h)));
  // Coarse level at 2h, fine level adds the odd nodes; halve again if they disagree.
  auto line_sum = [&](double offset, double stride) {
    Complex acc;
    if (options.conjugate_symmetric) {
      for (double t = offset; t <= span; t += stride) {
        Complex v = eval(Real(t));
        if (t == 0.0)
          acc.re += v.re;
        else
          acc.re += ldexp(v.re, 1);
      }
    } else {
      for (double t = offset; t <= span; t += stride) {
        acc += eval(Real(t));
        if (t != 0.0) acc += eval(Real(-t));
      }
    }
    return acc;
  };

  Complex coarse_nodes = line_sum(0.0, 2 * h);
  Complex coarse = coarse_nodes * Real(2 * h);
  for (int level = 0; level < 6; ++level) {
    Complex odd = line_sum(h, 2 * h);
    Complex fine = coarse;
    fine.mul_2si(-1);
    fine += odd * Real(h);
    Real diff = abs(fine - coarse);
    result.levels = level + 1;
    if (diff <= abs(fine) * Real(tol) || fine.is_zero()) {
      // Raw integral ds = i dt.
      WorkingPrecision out(ctx.precision_bits);
      result.value = Complex(-fine.im, fine.re).rounded();
      result.error_estimate = diff;
      return result;
    }
    coarse = std::move(fine);
    h /= 2.0;
  }
  fail(ErrorKind::NoConvergence, "vertical-line quadrature did not settle");
}

}  // namespace nfv
