#pragma once

namespace nfv {

// Working precision, tolerances and truncation policy shared by every numerical operation.
struct PrecisionContext {
  long precision_bits = 256;
  double target_rel_tol = 1e-30;
  long guard_bits = 64;
  long max_terms = 10'000'000;
  long max_precision_bits = 8192;

  // Throws DomainError on inconsistent settings.
  void validate() const;

  [[nodiscard]] long work_bits() const noexcept { return precision_bits + guard_bits; }

  // Context at `bits` with the tolerance scaled like the default (1e-30 at 256 bits).
  [[nodiscard]] static PrecisionContext with_precision(long bits);
  // Same context with a different precision, tolerance and caps kept.
  [[nodiscard]] PrecisionContext at_precision(long bits) const;
};

}  // namespace nfv
