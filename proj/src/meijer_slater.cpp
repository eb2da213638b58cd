// Residue (Slater) series for Meijer G with simple poles:
// G = sum_h C_h z^{b_h} pFq-1(1 + b_h - a; 1 + b_h - b_{j != h}; (-1)^{p-m-n} z).

#include "meijer_internal.hpp"

namespace nfv {

Complex eval_slater(const MeijerGSpec& spec, const Complex& z, const PrecisionContext& ctx) {
  ctx.validate();
  const PoleClass cls = validate_spec(spec);
  if (cls == PoleClass::ContourOnly) fail(ErrorKind::DivergentParameters, "residue series needs p < q");
  if (z.is_zero()) fail(ErrorKind::DomainError, "Meijer G residue series at z = 0");
  const auto& a = spec.a();
  const auto& b = spec.b();
  const long exact_bits = detail::confluence_bits(ctx);
  for (int h = 0; h < spec.m(); ++h) {
    for (int j = 0; j < spec.q(); ++j) {
      if (j == h) continue;
      long k = 0;
      Complex gap = b[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(h)];
      // Repeated poles (j < m), or a vanishing hypergeometric denominator (j >= m, gap - 1 >= 0).
      if (detail::integer_gap(gap, exact_bits, k) && (j < spec.m() || k >= 1))
        fail(ErrorKind::ConfluentParameters, "b-parameters differ by an integer; use the confluent residue series");
    }
  }
  const int sign = detail::residue_argument_sign(spec);
  return detail::with_escalation(
      ctx, detail::residue_peak_log2(spec, z),
      [&](long) {
        Complex arg = sign > 0 ? z.rounded() : -z;
        Complex total;
        double scale = -INFINITY;
        std::vector<Complex> num, den;
        for (int h = 0; h < spec.m(); ++h) {
          const Complex& bh = b[static_cast<std::size_t>(h)];
          Complex coef(1L);
          num.clear();
          den.clear();
          for (int j = 0; j < spec.q(); ++j) {
            if (j == h) continue;
            const Complex& bj = b[static_cast<std::size_t>(j)];
            if (j < spec.m())
              coef *= detail::gamma_raw(bj - bh);
            else
              coef *= detail::rgamma_raw(Complex(1L) + bh - bj);
            den.push_back(Complex(1L) + bh - bj);
          }
          for (int j = 0; j < spec.p(); ++j) {
            const Complex& aj = a[static_cast<std::size_t>(j)];
            if (j < spec.n())
              coef *= detail::gamma_raw(Complex(1L) + bh - aj);
            else
              coef *= detail::rgamma_raw(aj - bh);
            num.push_back(Complex(1L) + bh - aj);
          }
          if (coef.is_zero()) continue;
          coef *= pow(z, bh);
          auto s = detail::pfq_series(num, den, arg, ctx.max_terms);
          scale = std::max(scale, coef.log2_abs() + s.log2_max_term);
          total += coef * s.value;
        }
        return detail::Attempt{std::move(total), scale};
      },
      "eval_slater");
}

}  // namespace nfv
