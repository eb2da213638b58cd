#pragma once

// Internal helpers shared across translation units.

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nfv/errors.hpp"
#include "nfv/mp.hpp"
#include "nfv/precision.hpp"

namespace nfv::detail {

// One attempt at a fixed working precision: the value and log2 of the largest
// intermediate magnitude that fed into it (cancellation = scale - log2|value|).
struct Attempt {
  Complex value;
  double log2_scale = -INFINITY;
};

// Runs attempt(bits) at increasing precision until the measured cancellation
// leaves at least precision_bits + guard_bits/2 correct bits; result rounded to precision_bits.
// A result that cancels completely at two successive precisions is returned as exact zero.
template <class F>
Complex with_escalation(const PrecisionContext& ctx, double initial_extra_bits, F&& attempt, const char* what) {
  long bits = ctx.work_bits() + static_cast<long>(std::ceil(std::max(0.0, initial_extra_bits)));
  const long needed = ctx.precision_bits + ctx.guard_bits / 2;
  bool zero_retry = false;
  for (;;) {
    if (bits > ctx.max_precision_bits)
      fail(ErrorKind::PrecisionExceeded, std::string(what) + ": needs " + std::to_string(bits) + " bits, cap is " +
                                             std::to_string(ctx.max_precision_bits));
    Attempt a;
    {
      WorkingPrecision wp(bits);
      a = attempt(bits);
    }
    double mag = a.value.log2_abs();
    double loss;
    if (!std::isfinite(mag)) {
      if (!std::isfinite(a.log2_scale) || zero_retry) {
        WorkingPrecision wp(ctx.precision_bits);
        return a.value.rounded();
      }
      zero_retry = true;
      loss = static_cast<double>(bits);
    } else {
      loss = std::max(0.0, a.log2_scale - mag);
      // Total cancellation at two successive precisions: the value is zero relative to its terms.
      if (loss >= static_cast<double>(bits) - 8.0) {
        if (zero_retry) {
          WorkingPrecision wp(ctx.precision_bits);
          return Complex();
        }
        zero_retry = true;
      }
    }
    if (static_cast<double>(bits) - loss >= static_cast<double>(needed)) {
      WorkingPrecision wp(ctx.precision_bits);
      return a.value.rounded();
    }
    long next = ctx.work_bits() + static_cast<long>(std::ceil(loss)) + 32;
    bits = std::max(next, bits + bits / 2);
  }
}

// B_2, B_4, ..., B_{2n} rounded to `bits`, memoized per precision (thread-safe).
std::shared_ptr<const std::vector<Real>> bernoulli_reals(long bits, std::size_t n);
// B_{2k} / (2k (2k-1)) rounded to `bits`: Stirling series coefficients.
std::shared_ptr<const std::vector<Real>> stirling_coefficients(long bits, std::size_t n);

struct SeriesSum {
  Complex value;
  double log2_max_term = -INFINITY;
  long terms = 0;
};

// Plain pFq summation at the current working precision, no escalation.
SeriesSum pfq_series(std::span<const Complex> a, std::span<const Complex> b, const Complex& z, long max_terms);
// Double-precision estimate of log2 of the largest pFq term magnitude.
double pfq_peak_log2(std::span<const Complex> a, std::span<const Complex> b, const Complex& z);

// Gamma pieces at the current working precision, no escalation.
Complex gamma_raw(const Complex& z);
Complex rgamma_raw(const Complex& z);
Complex log_gamma_raw(const Complex& z);
Complex polygamma_raw(int n, const Complex& z);

inline double log2_e() { return 1.4426950408889634; }

}  // namespace nfv::detail
