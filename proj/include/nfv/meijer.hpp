#pragma once

// Meijer G-functions G^{m,n}_{p,q}(z | a; b) on the principal branch.
// Strategies: residue (Slater) series for simple poles, residue series with
// Laurent expansions for repeated poles, Mellin-Barnes line quadrature, and the
// algebraic large-argument expansion of the G^{m,1}_{1,q} family.

#include <optional>
#include <string>
#include <vector>

#include "nfv/mp.hpp"
#include "nfv/precision.hpp"

namespace nfv {

class MeijerGSpec {
 public:
  // Throws InvalidSpec unless 0 <= m <= q and 0 <= n <= p.
  MeijerGSpec(int m, int n, std::vector<Complex> a_params, std::vector<Complex> b_params);

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int p() const noexcept { return static_cast<int>(a_.size()); }
  [[nodiscard]] int q() const noexcept { return static_cast<int>(b_.size()); }
  [[nodiscard]] const std::vector<Complex>& a() const noexcept { return a_; }
  [[nodiscard]] const std::vector<Complex>& b() const noexcept { return b_; }
  // delta = m + n - (p + q)/2; the line integral converges for |arg z| < delta pi.
  [[nodiscard]] double delta() const noexcept { return delta_; }
  // All parameters real, so real z > 0 gives a real value.
  [[nodiscard]] bool real_parameters() const noexcept;

 private:
  int m_;
  int n_;
  std::vector<Complex> a_;
  std::vector<Complex> b_;
  double delta_;
};

enum class PoleClass { SimplePoles, ConfluentPoles, ContourOnly };
enum class MeijerStrategy { Slater, Confluent, Contour, Asymptotic };

[[nodiscard]] std::string to_string(PoleClass c);
[[nodiscard]] std::string to_string(MeijerStrategy s);

// SimplePoles when no two of b_1..b_m differ by an integer (tolerance 1e-6); ConfluentPoles otherwise;
// ContourOnly when p >= q. InvalidSpec for m = 0 or when the a- and b-pole families overlap.
[[nodiscard]] PoleClass validate_spec(const MeijerGSpec& spec);

[[nodiscard]] Complex eval_slater(const MeijerGSpec& spec, const Complex& z, const PrecisionContext& ctx = {});
[[nodiscard]] Complex eval_slater_confluent(const MeijerGSpec& spec, const Complex& z, const PrecisionContext& ctx = {});
[[nodiscard]] Complex eval_contour(const MeijerGSpec& spec, const Complex& z, const PrecisionContext& ctx = {});

// Algebraic expansion of G^{m,1}_{1,q}(z) in powers z^{a_1-1-k}, k = 0..order.
struct AsymptoticExpansion {
  long truncation_order = 0;
  std::vector<Complex> terms;   // term k, already multiplied by z^{a_1-1-k}
  Complex value;                // sum of terms
  Complex first_dropped;        // term order+1
  double log2_remainder = 0.0;  // log2 estimate of the exponentially small remainder
};

// Coefficient of z^{a_1-1-k} in the expansion (no power of z).
[[nodiscard]] Complex asymptotic_coefficient(const MeijerGSpec& spec, long k, const PrecisionContext& ctx = {});
// BelowCrossover when the spec is outside the family, or the exponential remainder dominates the first dropped term.
[[nodiscard]] AsymptoticExpansion eval_asymptotic(const MeijerGSpec& spec, const Complex& z, long order,
                                                  const PrecisionContext& ctx = {});
// Smallest order whose first dropped term and remainder are below target_rel_tol; nullopt if none exists.
[[nodiscard]] std::optional<AsymptoticExpansion> asymptotic_to_tolerance(const MeijerGSpec& spec, const Complex& z,
                                                                         const PrecisionContext& ctx = {});

struct MeijerOptions {
  bool allow_asymptotic = true;
  bool cross_check = false;  // also evaluate on the contour when delta > 0
};

struct MeijerResult {
  Complex value;
  MeijerStrategy strategy = MeijerStrategy::Slater;
  std::optional<double> cross_check_rel_diff;
  std::string notes;
};

[[nodiscard]] MeijerResult eval(const MeijerGSpec& spec, const Complex& z, const PrecisionContext& ctx = {},
                                const MeijerOptions& options = {});

// int_0^inf K_mu(t) t^{mu+nu+s-1} dt = 2^{mu+nu+s-2} Gamma((s+nu)/2) Gamma((2mu+nu+s)/2).
[[nodiscard]] Complex mellin_k_bessel(const Complex& mu, const Complex& nu, const Complex& s,
                                      const PrecisionContext& ctx = {});

}  // namespace nfv
