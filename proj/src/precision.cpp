#include "nfv/precision.hpp"

#include <cmath>
#include <mpfr.h>

#include "nfv/errors.hpp"

namespace nfv {

void PrecisionContext::validate() const {
  if (precision_bits < 64) fail(ErrorKind::DomainError, "precision_bits must be >= 64");
  if (guard_bits < 16) fail(ErrorKind::DomainError, "guard_bits must be >= 16");
  if (!(target_rel_tol > 0.0) || !std::isfinite(target_rel_tol))
    fail(ErrorKind::DomainError, "target_rel_tol must be positive");
  if (max_terms < 1) fail(ErrorKind::DomainError, "max_terms must be positive");
  if (max_precision_bits < precision_bits + guard_bits || max_precision_bits > MPFR_PREC_MAX / 2)
    fail(ErrorKind::DomainError, "max_precision_bits must be at least precision_bits + guard_bits");
}

PrecisionContext PrecisionContext::with_precision(long bits) {
  PrecisionContext ctx;
  ctx.precision_bits = bits;
  ctx.target_rel_tol = std::exp2(-static_cast<double>(bits) * (100.0 / 256.0));
  if (ctx.max_precision_bits < 4 * bits) ctx.max_precision_bits = 4 * bits;
  return ctx;
}

PrecisionContext PrecisionContext::at_precision(long bits) const {
  PrecisionContext ctx = *this;
  ctx.precision_bits = bits;
  if (ctx.max_precision_bits < bits + guard_bits) ctx.max_precision_bits = 4 * bits;
  return ctx;
}

}  // namespace nfv
