#pragma once

// Helpers shared by the Meijer G strategies.

#include "internal.hpp"
#include "nfv/meijer.hpp"

namespace nfv::detail {

// d is within 2^-bits of an integer (real part) with negligible imaginary part; sets k.
bool integer_gap(const Complex& d, long bits, long& k);
// Bits below which parameter gaps count as exact confluence.
inline long confluence_bits(const PrecisionContext& ctx) { return ctx.precision_bits / 2; }
// Double estimate of log2 of the largest residue-series term, used to size the first attempt.
double residue_peak_log2(const MeijerGSpec& spec, const Complex& z);
// Sign (-1)^{p-m-n} carried by the hypergeometric argument of the residue series.
int residue_argument_sign(const MeijerGSpec& spec);

}  // namespace nfv::detail
