// Strategy selection for Meijer G evaluation.

#include "meijer_internal.hpp"

namespace nfv {

MeijerResult eval(const MeijerGSpec& spec, const Complex& z, const PrecisionContext& ctx, const MeijerOptions& options) {
  ctx.validate();
  const PoleClass cls = validate_spec(spec);
  MeijerResult out;
  out.notes = "class=" + to_string(cls);
  bool done = false;
  if (options.allow_asymptotic && spec.p() == 1 && spec.n() == 1 && spec.q() > spec.p()) {
    if (auto e = asymptotic_to_tolerance(spec, z, ctx)) {
      out.value = std::move(e->value);
      out.strategy = MeijerStrategy::Asymptotic;
      out.notes += "; asymptotic order " + std::to_string(e->truncation_order);
      done = true;
    }
  }
  if (!done) {
    if (cls == PoleClass::ContourOnly) {
      out.value = eval_contour(spec, z, ctx);
      out.strategy = MeijerStrategy::Contour;
    } else {
      try {
        out.value = eval_slater(spec, z, ctx);
        out.strategy = MeijerStrategy::Slater;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ConfluentParameters) throw;
        out.value = eval_slater_confluent(spec, z, ctx);
        out.strategy = MeijerStrategy::Confluent;
      }
    }
  }
  out.notes += "; strategy=" + to_string(out.strategy);
  if (options.cross_check && spec.delta() > 0.0 && out.strategy != MeijerStrategy::Contour) {
    try {
      Complex c = eval_contour(spec, z, ctx);
      WorkingPrecision wp(ctx.work_bits());
      Real denom = max(abs(c), abs(out.value));
      double diff = denom.is_zero() ? 0.0 : (abs(c - out.value) / denom).to_double();
      out.cross_check_rel_diff = diff;
      out.notes += "; contour cross-check rel diff " + std::to_string(diff);
    } catch (const Error& e) {
      out.notes += std::string("; contour cross-check unavailable: ") + e.what();
    }
  }
  return out;
}

}  // namespace nfv
