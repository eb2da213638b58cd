#pragma once

// Both sides of the number-field Voronoi summation formula, the Lambert-series
// transformation and its continuation, plus the large-n check of the Lambert G-function.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfv/fields.hpp"
#include "nfv/meijer.hpp"
#include "nfv/mp.hpp"
#include "nfv/precision.hpp"

namespace nfv {

// Test function for the summation formula: e^{-y t} or e^{-beta t^2}.
class SchwartzProbe {
 public:
  enum class Kind { Exponential, Gaussian };

  // Re y > 0, else DomainError.
  [[nodiscard]] static SchwartzProbe exponential(Complex y);
  // beta > 0, else DomainError.
  [[nodiscard]] static SchwartzProbe gaussian(Real beta);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] const Complex& y() const noexcept { return y_; }
  [[nodiscard]] const Real& beta() const noexcept { return beta_; }
  [[nodiscard]] Complex value(const Real& t) const;
  [[nodiscard]] Complex value_at_zero() const { return Complex(1L); }
  [[nodiscard]] bool has_mellin() const noexcept { return true; }
  // int_0^inf f(t) t^{s-1} dt: Gamma(s) y^{-s} or Gamma(s/2) / (2 beta^{s/2}).
  [[nodiscard]] Complex mellin(const Complex& s, const PrecisionContext& ctx = {}) const;
  // "exp:Y" or "gauss:B".
  [[nodiscard]] std::string label() const;

 private:
  SchwartzProbe(Kind kind, Complex y, Real beta) : kind_(kind), y_(std::move(y)), beta_(std::move(beta)) {}
  Kind kind_;
  Complex y_;
  Real beta_;
};

struct FieldDescriptor {
  int degree = 1;
  int r1 = 1;
  int r2 = 0;
  long discriminant = 1;
  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

[[nodiscard]] FieldDescriptor describe(const NumberField& field);

struct VerificationReport {
  std::string identity;
  FieldDescriptor field;
  std::vector<std::pair<std::string, Complex>> params;  // in emission order
  Complex lhs;
  Complex rhs;
  Real abs_err;
  Real rel_err;  // |lhs - rhs| / max(|lhs|, |rhs|, 2^-precision_bits)
  long terms_used = 0;
  std::optional<long> continuation_m;
  long precision_bits = 0;
  std::string strategy;
  double elapsed_ms = 0.0;
  // Set when the computation failed; lhs/rhs are then meaningless and the check counts as failed.
  std::optional<std::string> error;
  // Summation formula only: lhs - (partial rhs through N), in ascending N. Also rendered into `strategy`.
  std::vector<std::pair<long, Complex>> residual_trace;

  // Fills abs_err and rel_err from lhs and rhs.
  void finalize_errors();
  [[nodiscard]] bool within(double tol) const;
};

// Parallelism for n-indexed series; the reduction order is always ascending n.
struct SeriesOptions {
  int jobs = 1;
  // Voronoi: number of directly summed terms (0 chooses the asymptotic crossover).
  long terms = 0;
};

// A computed side of an identity with its truncation data.
struct SeriesValue {
  Complex value;
  long terms = 0;
  std::string notes;
};

// Lambert G-function family G^{d+1,1}_{1,2d+1}(. | -a/4 ; ...) and its argument 4 pi^{2(d+1)} n^2 / (y^2 D^2).
[[nodiscard]] MeijerGSpec lambert_spec(const NumberField& field, const Complex& a);
[[nodiscard]] Complex lambert_argument(const NumberField& field, const Complex& y, long n, const PrecisionContext& ctx);

// sum_n sigma_{K,a}(n) e^{-n y}; Re y > 0.
[[nodiscard]] SeriesValue lambert_lhs_series(const NumberField& field, const Complex& a, const Complex& y,
                                             const PrecisionContext& ctx = {});
[[nodiscard]] Complex lambert_lhs(const NumberField& field, const Complex& a, const Complex& y,
                                  const PrecisionContext& ctx = {});

// Preconditions of the transformed side (continued when m is set); throws the error the evaluation would.
void validate_lambert_inputs(const NumberField& field, const Complex& a, const Complex& y,
                             std::optional<long> continued_m);

// Transformed side; Re a > -1, a away from even integers, |arg y| < pi/4.
[[nodiscard]] SeriesValue lambert_rhs_series(const NumberField& field, const Complex& a, const Complex& y,
                                             const PrecisionContext& ctx = {}, const SeriesOptions& options = {});
[[nodiscard]] Complex lambert_rhs(const NumberField& field, const Complex& a, const Complex& y,
                                  const PrecisionContext& ctx = {});

// Continued transformed side with the first m + 1 asymptotic terms subtracted; Re a > -2m - 3.
[[nodiscard]] SeriesValue lambert_rhs_continued_series(const NumberField& field, const Complex& a, const Complex& y,
                                                       long m, const PrecisionContext& ctx = {},
                                                       const SeriesOptions& options = {});
[[nodiscard]] Complex lambert_rhs_continued(const NumberField& field, const Complex& a, const Complex& y, long m,
                                            const PrecisionContext& ctx = {});

// Closed form of the first m + 1 large-n terms of the Lambert G-function at index n.
[[nodiscard]] Complex lambert_g_asymptotic(const NumberField& field, const Complex& a, const Complex& y, long n, long m,
                                           const PrecisionContext& ctx = {});

struct GAsymptoticCheck {
  Complex value;      // G evaluated by residue series
  Complex truncated;  // m-truncated closed form
  Real error;         // |value - truncated|
};

[[nodiscard]] GAsymptoticCheck g_asymptotic_check(const NumberField& field, const Complex& a, const Complex& y, long n,
                                                  long m, const PrecisionContext& ctx = {});

// Preconditions of voronoi_verify.
void validate_voronoi_inputs(const NumberField& field, const Complex& a, const SchwartzProbe& probe,
                             const SeriesOptions& options = {});

// Summation formula with both sides; the report's strategy notes carry the partial-sum residual trace.
[[nodiscard]] VerificationReport voronoi_verify(const NumberField& field, const Complex& a, const SchwartzProbe& probe,
                                                const PrecisionContext& ctx = {}, const SeriesOptions& options = {});

[[nodiscard]] VerificationReport verify_lambert(const NumberField& field, const Complex& a, const Complex& y,
                                                std::optional<long> continued_m, const PrecisionContext& ctx = {},
                                                const SeriesOptions& options = {});

[[nodiscard]] VerificationReport verify_koshliakov(const NumberField& field, const Complex& mu, const Complex& nu,
                                                   const Complex& x, const PrecisionContext& ctx = {});

}  // namespace nfv
