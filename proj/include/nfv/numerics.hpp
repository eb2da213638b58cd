#pragma once

// Arbitrary-precision scalar kernels. Public functions accept inputs at any
// precision, work internally at precision_bits + guard_bits (escalating when
// cancellation is detected) and return values rounded to precision_bits.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nfv/errors.hpp"
#include "nfv/mp.hpp"
#include "nfv/precision.hpp"

namespace nfv {

// ---- Gamma family

[[nodiscard]] Complex gamma(const Complex& z, const PrecisionContext& ctx);
// A logarithm of Gamma: the principal branch for Re z > 0, some branch with exp(.) = Gamma otherwise.
[[nodiscard]] Complex log_gamma(const Complex& z, const PrecisionContext& ctx);
// 1/Gamma(z); entire, exactly zero at the poles of Gamma.
[[nodiscard]] Complex rgamma(const Complex& z, const PrecisionContext& ctx);
// psi^(n)(z); psi^(0) is the digamma function.
[[nodiscard]] Complex polygamma(int n, const Complex& z, const PrecisionContext& ctx);
// (a)_n at the current working precision.
[[nodiscard]] Complex pochhammer(const Complex& a, long n);

// ---- Hypergeometric series

// pFq with p <= q (entire case).
[[nodiscard]] Complex hypergeometric_pfq(std::span<const Complex> a, std::span<const Complex> b, const Complex& z,
                                         const PrecisionContext& ctx);

// ---- Bessel functions

enum class BesselKind { J, Y, I, K };

[[nodiscard]] Complex bessel(BesselKind kind, const Complex& order, const Complex& z, const PrecisionContext& ctx);
// |z| beyond which the large-argument expansions are used.
[[nodiscard]] double bessel_crossover_radius(const PrecisionContext& ctx);

// ---- Zeta functions

// zeta(s, alpha) for real alpha in (0, 1].
[[nodiscard]] Complex hurwitz_zeta(const Complex& s, const Real& alpha, const PrecisionContext& ctx);
[[nodiscard]] Complex riemann_zeta(const Complex& s, const PrecisionContext& ctx);

// ---- Quadrature

struct QuadratureResult {
  Complex value;
  Real error_estimate;
  int levels = 0;
  long evaluations = 0;
};

using HalfLineIntegrand = std::function<Complex(const Real& t)>;

struct HalfLineOptions {
  int max_levels = 12;
  // Relative agreement required between successive levels; <= 0 means ctx.target_rel_tol.
  double rel_tol = 0.0;
  // Absolute floor for the agreement test (integrals that cancel to ~0).
  double abs_tol = 0.0;
  // Initial step of the exp-sinh trapezoid.
  double initial_step = 0.5;
};

// Integral of f over (0, infinity) by exp-sinh quadrature t = exp(pi/2 sinh u).
[[nodiscard]] QuadratureResult integrate_halfline(const HalfLineIntegrand& f, const PrecisionContext& ctx,
                                                  const HalfLineOptions& options = {});

using LineIntegrand = std::function<Complex(const Complex& s)>;

struct VerticalLineOptions {
  // Distance from the line to the nearest singularity; sets the trapezoid step.
  double strip_half_width = 0.25;
  // Integrand known to satisfy g(conj s) = conj g(s).
  bool conjugate_symmetric = false;
  // Scale of |g| used for the truncation test; 0 means estimated from the nodes.
  double max_abs_t = 0.0;
};

// Raw integral of g(s) ds along s = c + i t, t in (-inf, inf), i.e. i * integral g(c + i t) dt.
[[nodiscard]] QuadratureResult integrate_vertical_line(const LineIntegrand& g, const Real& c,
                                                       const PrecisionContext& ctx,
                                                       const VerticalLineOptions& options = {});

}  // namespace nfv
