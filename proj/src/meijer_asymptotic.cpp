// Algebraic large-|z| expansion of G^{m,1}_{1,q}: residues at the poles of Gamma(1 - a_1 + s),
//   G ~ sum_k (-1)^k / k! prod_{j<=m} Gamma(1 + b_j - a_1 + k) / prod_{j>m} Gamma(a_1 - k - b_j) z^{a_1-1-k},
// plus exponentially small contributions of size exp(-sigma |z|^{1/sigma} cos(pi nu / sigma)),
// sigma = q - p, nu = q - m - n.

#include <numbers>

#include "meijer_internal.hpp"

namespace nfv {

namespace {

void require_family(const MeijerGSpec& spec) {
  if (spec.p() != 1 || spec.n() != 1 || spec.m() < 1 || spec.q() <= spec.p())
    fail(ErrorKind::BelowCrossover, "algebraic expansion is implemented for the G^{m,1}_{1,q} family only");
}

// log2 of the exponentially small part, or +inf when it is not recessive.
double log2_exponential_part(const MeijerGSpec& spec, const Complex& z) {
  const double sigma = spec.q() - spec.p();
  const double nu = spec.q() - spec.m() - spec.n();
  const double arg_z = std::fabs(std::atan2(z.im.to_double(), z.re.to_double()));
  const double angle = (std::numbers::pi * nu + arg_z) / sigma;
  if (angle >= std::numbers::pi / 2) return INFINITY;
  const double lz = z.log2_abs();
  const double r = std::exp2(lz / sigma);
  double theta = 0.5 * (spec.p() - spec.q() + 1);
  for (const auto& b : spec.b()) theta += b.re.to_double();
  for (const auto& a : spec.a()) theta -= a.re.to_double();
  theta /= sigma;
  const double constant = 0.5 * ((sigma - 1.0) * std::log2(2.0 * std::numbers::pi) - std::log2(sigma));
  return -sigma * r * std::cos(angle) * detail::log2_e() + theta * lz + constant;
}

// Coefficients c_0..c_count-1 at the current working precision.
std::vector<Complex> coefficients(const MeijerGSpec& spec, long count) {
  const Complex& a1 = spec.a()[0];
  std::vector<Complex> num, den;  // Gamma(1 + b_j - a_1 + k), 1/Gamma(a_1 - k - b_j)
  for (int j = 0; j < spec.q(); ++j) {
    const Complex& bj = spec.b()[static_cast<std::size_t>(j)];
    if (j < spec.m())
      num.push_back(Complex(1L) + bj - a1);
    else
      den.push_back(a1 - bj);
  }
  Complex c(1L);
  for (const auto& x : num) c *= detail::gamma_raw(x);
  for (const auto& x : den) c *= detail::rgamma_raw(x);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    out.push_back(c);
    // c_{k+1} = -c_k / (k+1) prod (1 + b_j - a_1 + k) prod (a_1 - k - 1 - b_j)
    for (auto& x : num) {
      c *= x;
      x += Complex(1L);
    }
    for (auto& x : den) {
      x -= Complex(1L);
      c *= x;
    }
    c /= Real(-(k + 1));
  }
  return out;
}

AsymptoticExpansion build(const MeijerGSpec& spec, const Complex& z, long order, double log2_rem) {
  auto coef = coefficients(spec, order + 2);
  AsymptoticExpansion e;
  e.truncation_order = order;
  e.log2_remainder = log2_rem;
  Complex inv = Complex(1L) / z;
  Complex power = pow(z, spec.a()[0] - Complex(1L));
  for (long k = 0; k <= order + 1; ++k) {
    Complex t = coef[static_cast<std::size_t>(k)] * power;
    if (k <= order) {
      e.value += t;
      e.terms.push_back(std::move(t));
    } else {
      e.first_dropped = std::move(t);
    }
    power *= inv;
  }
  return e;
}

AsymptoticExpansion rounded(AsymptoticExpansion e, long bits) {
  WorkingPrecision wp(bits);
  for (auto& t : e.terms) t = t.rounded();
  e.value = e.value.rounded();
  e.first_dropped = e.first_dropped.rounded();
  return e;
}

}  // namespace

Complex asymptotic_coefficient(const MeijerGSpec& spec, long k, const PrecisionContext& ctx) {
  ctx.validate();
  require_family(spec);
  Complex c;
  {
    WorkingPrecision wp(ctx.work_bits());
    c = coefficients(spec, k + 1).back();
  }
  WorkingPrecision out(ctx.precision_bits);
  return c.rounded();
}

AsymptoticExpansion eval_asymptotic(const MeijerGSpec& spec, const Complex& z, long order, const PrecisionContext& ctx) {
  ctx.validate();
  require_family(spec);
  if (order < 0) fail(ErrorKind::DomainError, "truncation order must be non-negative");
  if (z.is_zero()) fail(ErrorKind::BelowCrossover, "z = 0");
  const double rem = log2_exponential_part(spec, z);
  if (!std::isfinite(rem)) fail(ErrorKind::BelowCrossover, "exponential contributions are not recessive here");
  AsymptoticExpansion e;
  {
    WorkingPrecision wp(ctx.work_bits());
    e = build(spec, z, order, rem);
  }
  if (!e.first_dropped.is_zero() && rem > e.first_dropped.log2_abs())
    fail(ErrorKind::BelowCrossover, "exponential remainder exceeds the first dropped term; |z| below crossover");
  if (!e.terms.back().is_zero() && e.first_dropped.log2_abs() > e.terms.back().log2_abs())
    fail(ErrorKind::BelowCrossover, "truncation order lies past the smallest term; |z| below crossover");
  return rounded(std::move(e), ctx.precision_bits);
}

std::optional<AsymptoticExpansion> asymptotic_to_tolerance(const MeijerGSpec& spec, const Complex& z,
                                                           const PrecisionContext& ctx) {
  ctx.validate();
  require_family(spec);
  if (z.is_zero()) return std::nullopt;
  const double rem = log2_exponential_part(spec, z);
  if (!std::isfinite(rem)) return std::nullopt;
  const double log2_tol = std::log2(ctx.target_rel_tol) - 4.0;
  WorkingPrecision wp(ctx.work_bits());
  const Complex& a1 = spec.a()[0];
  const double lead = (pow(z, a1 - Complex(1L)) * coefficients(spec, 1)[0]).log2_abs();
  if (!std::isfinite(lead) || rem > lead + log2_tol) return std::nullopt;
  // Grow the order until the next term is negligible; give up once terms stop decreasing.
  constexpr long kMaxOrder = 400;
  auto coef = coefficients(spec, kMaxOrder + 2);
  const double lz = z.log2_abs();
  double prev = INFINITY;
  for (long k = 0; k <= kMaxOrder; ++k) {
    const double lt = coef[static_cast<std::size_t>(k + 1)].log2_abs() - static_cast<double>(k + 1) * lz + lead -
                      coef[0].log2_abs();
    if (coef[static_cast<std::size_t>(k + 1)].is_zero() || lt < lead + log2_tol) {
      auto e = build(spec, z, k, rem);
      return rounded(std::move(e), ctx.precision_bits);
    }
    if (lt > prev) return std::nullopt;
    prev = lt;
  }
  return std::nullopt;
}

}  // namespace nfv
