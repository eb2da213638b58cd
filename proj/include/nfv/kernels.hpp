#pragma once

// The number-field Koshliakov kernel
//   G_{K,nu}(x) = G^{d+1,0}_{0,2d+2}(x^2/16 | -nu/2, (nu/2)_{r1+r2}, ((1+nu)/2)_{r2};
//                                            (1-nu)/2, (nu/2)_{r2}, ((1+nu)/2)_{r1+r2}),
// its closed forms for Q and imaginary quadratic fields, and both sides of the
// transform  int_0^inf K_mu(t) t^{mu+nu} G_{K,nu}(x t) dt.

#include "nfv/fields.hpp"
#include "nfv/meijer.hpp"
#include "nfv/mp.hpp"
#include "nfv/numerics.hpp"
#include "nfv/precision.hpp"

namespace nfv {

struct KernelParams {
  NumberField field;
  Complex nu;
};

// Sign of the third 0F5 term in the imaginary-quadratic closed form.
// Derived: + (agrees with the G-function); AsPrinted: - (the form as usually displayed).
enum class KernelVariant { Derived, AsPrinted };

[[nodiscard]] MeijerGSpec kernel_spec(const KernelParams& params);
// Residue-series evaluation of G_{K,nu}(x); x != 0.
[[nodiscard]] Complex kernel_eval(const KernelParams& params, const Complex& x, const PrecisionContext& ctx = {});
// Fastest available evaluation: closed forms for Q and imaginary quadratic fields, residue series otherwise.
[[nodiscard]] Complex kernel_value(const KernelParams& params, const Complex& x, const PrecisionContext& ctx = {});
// True when kernel_value falls back to the residue series (degree >= 3): quadratures over it are experimental.
[[nodiscard]] bool kernel_is_experimental(const NumberField& field) noexcept;

// cos(pi nu)((2/pi) K_{2nu}(X) - Y_{2nu}(X)) - sin(pi nu) J_{2nu}(X), X = 2 sqrt(w).
[[nodiscard]] Complex kernel_closed_form_rational(const Complex& nu, const Complex& w, const PrecisionContext& ctx = {});
// sqrt(pi)/sin(2 pi nu) (t1 - t2 +- t3), three 0F5 terms at -w^2/16. PoleError when 2 nu is an integer.
[[nodiscard]] Complex kernel_closed_form_imaginary_quadratic(const Complex& nu, const Complex& w,
                                                             const PrecisionContext& ctx = {},
                                                             KernelVariant variant = KernelVariant::Derived);

// G^{d+1,1}_{1,2d+1}(. | (1-2mu-nu)/2 ; kernel b-list without (1-nu)/2) evaluated at x^2/4.
[[nodiscard]] MeijerGSpec koshliakov_spec(const NumberField& field, const Complex& mu, const Complex& nu);
// Re(mu), Re(nu), Re(mu + nu) > -1/2 and x != 0, else DomainError.
void validate_koshliakov_inputs(const Complex& mu, const Complex& nu, const Complex& x);
// Quadrature of K_mu(t) t^{mu+nu} G_{K,nu}(x t) to ctx.target_rel_tol.
[[nodiscard]] QuadratureResult koshliakov_lhs_quadrature(const NumberField& field, const Complex& mu, const Complex& nu,
                                                         const Complex& x, const PrecisionContext& ctx = {});
[[nodiscard]] Complex koshliakov_lhs(const NumberField& field, const Complex& mu, const Complex& nu, const Complex& x,
                                     const PrecisionContext& ctx = {});
// 2^{mu+nu-1} G^{d+1,1}_{1,2d+1}(x^2/4).
[[nodiscard]] Complex koshliakov_rhs(const NumberField& field, const Complex& mu, const Complex& nu, const Complex& x,
                                     const PrecisionContext& ctx = {});
// Q only: the two-term 1F2 form of the transform.
[[nodiscard]] Complex koshliakov_rational_closed_form(const Complex& mu, const Complex& nu, const Complex& x,
                                                      const PrecisionContext& ctx = {});

}  // namespace nfv
