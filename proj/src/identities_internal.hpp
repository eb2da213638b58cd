#pragma once

// Pieces shared by the Lambert and Voronoi pipelines.

#include "internal.hpp"
#include "nfv/identities.hpp"

namespace nfv::detail {

// a within 1e-6 of an even integer (Lambert constants singular) -> SingularParameter.
void guard_lambert_parameter(const Complex& a);
// ζ_K(1-a)/y - ζ_K(-a)/2 + Gamma(a+1) ζ(a+1) H / y^{a+1}.
Complex lambert_main_terms(const NumberField& field, const Complex& a, const Complex& y, const PrecisionContext& ctx);
// 2^{1+a/2} pi^{(a+(1-a)d)/2} D^{(a-1)/2} y^{-1-a/2}.
Complex lambert_prefactor(const NumberField& field, const Complex& a, const Complex& y, const PrecisionContext& ctx);
// 4 pi^{2(d+1)} / (y^2 D^2): the G argument is this times n^2.
Complex lambert_scale(const NumberField& field, const Complex& y, const PrecisionContext& ctx);

// Sum over n > n0 of sigma_{K,-a}(n) n^{a/2} G(C n^2), from the large-argument expansion in closed form.
struct LambertTail {
  long n0 = 0;     // head is n = 1..n0
  long order = 0;  // expansion order used beyond n0
};

// Smallest head length whose first tail term is within tolerance of the large-argument expansion.
// NoConvergence past max_n0.
LambertTail lambert_crossover(const MeijerGSpec& spec, const Complex& C, const PrecisionContext& ctx, long max_n0);
// With head length tail.n0: sum_{k=k_first}^{order} T_k C^{a_1-1-k} (ζ(2k+2) ζ_K(2k+2+a) - sum_{n<=n0} sigma_{K,-a}(n) n^{-2-2k}).
Complex lambert_tail_sum(const NumberField& field, const MeijerGSpec& spec, const Complex& a, const Complex& C,
                         const LambertTail& tail, long k_first, const PrecisionContext& ctx);
// G(C n^2) for n = 1..n0 by residue series, in parallel.
std::vector<Complex> lambert_head_values(const MeijerGSpec& spec, const Complex& C, long n0, int jobs,
                                         const PrecisionContext& ctx);
// sigma_{K,-a}(n) n^{a/2} for n = 1..n_max at ctx.work_bits(); index 0 unused.
std::vector<Complex> voronoi_coefficients(const NumberField& field, const Complex& a, long n_max,
                                          const PrecisionContext& ctx);

}  // namespace nfv::detail
