// Generalized hypergeometric series pFq, p <= q.

#include <cmath>

#include "internal.hpp"
#include "nfv/numerics.hpp"

namespace nfv {
namespace detail {

namespace {

struct Approx {
  double re, im;
};

Approx approx(const Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

double log2_abs_shift(const Approx& a, double k) { return 0.5 * std::log2((a.re + k) * (a.re + k) + a.im * a.im); }

bool is_nonpositive_integer(const Complex& z, long& n) {
  if (!z.im.is_zero() || !z.re.is_integer() || z.re.sign() > 0) return false;
  n = z.re.to_long();
  return true;
}

// Number of terms before the series terminates (a = -n), or -1 if it does not.
long termination_index(std::span<const Complex> a) {
  long best = -1;
  for (const auto& x : a) {
    long n = 0;
    if (is_nonpositive_integer(x, n) && (best < 0 || -n < best)) best = -n;
  }
  return best;
}

}  // namespace

double pfq_peak_log2(std::span<const Complex> a, std::span<const Complex> b, const Complex& z) {
  double lz = z.log2_abs();
  if (!std::isfinite(lz)) return 0.0;
  std::vector<Approx> aa, bb;
  for (const auto& x : a) aa.push_back(approx(x));
  for (const auto& x : b) bb.push_back(approx(x));
  double scale = 1.0;
  for (const auto& x : aa) scale = std::max(scale, std::hypot(x.re, x.im));
  for (const auto& x : bb) scale = std::max(scale, std::hypot(x.re, x.im));
  double log_term = 0.0, peak = 0.0;
  for (long k = 0; k < 100'000'000; ++k) {
    double kk = static_cast<double>(k);
    double inc = lz - std::log2(kk + 1.0);
    for (const auto& x : aa) inc += log2_abs_shift(x, kk);
    for (const auto& x : bb) {
      double v = log2_abs_shift(x, kk);
      inc -= std::isfinite(v) ? v : -60.0;
    }
    if (!std::isfinite(inc)) break;  // terminating series
    log_term += inc;
    peak = std::max(peak, log_term);
    if (inc < -1.0 && kk > 2.0 * scale + 2.0) break;
  }
  return peak;
}

SeriesSum pfq_series(std::span<const Complex> a, std::span<const Complex> b, const Complex& z, long max_terms) {
  const long bits = working_precision();
  SeriesSum out;
  out.value = Complex(1L);
  out.log2_max_term = 0.0;
  out.terms = 1;
  if (z.is_zero()) return out;
  const long stop_at = termination_index(a);
  // Shifted parameters a_i + k, b_j + k updated in place.
  std::vector<Complex> ak, bk;
  for (const auto& x : a) ak.push_back(x.rounded());
  for (const auto& x : b) bk.push_back(x.rounded());
  double scale = 1.0;
  for (const auto& x : a) scale = std::max(scale, std::exp2(std::min(60.0, x.log2_abs())));
  for (const auto& x : b) scale = std::max(scale, std::exp2(std::min(60.0, x.log2_abs())));
  const Complex zz = z.rounded();
  Complex term(1L);
  Real one(1L);
  int small_run = 0;
  for (long k = 0;; ++k) {
    if (stop_at >= 0 && k >= stop_at) break;
    if (k >= max_terms) fail(ErrorKind::PrecisionExceeded, "pFq exceeded max_terms");
    Complex num = zz;
    for (auto& x : ak) {
      num *= x;
      x.re += one;
    }
    Complex den(Real(k + 1));
    for (auto& x : bk) {
      if (x.is_zero()) fail(ErrorKind::PoleError, "pFq lower parameter is a non-positive integer");
      den *= x;
      x.re += one;
    }
    term *= num;
    term /= den;
    out.value += term;
    ++out.terms;
    double lt = term.log2_abs();
    out.log2_max_term = std::max(out.log2_max_term, lt);
    if (term.is_zero()) break;
    if (lt < out.value.log2_abs() - static_cast<double>(bits) && static_cast<double>(k) > 2.0 * scale) {
      if (++small_run >= 2) break;
    } else {
      small_run = 0;
    }
  }
  return out;
}

}  // namespace detail

Complex hypergeometric_pfq(std::span<const Complex> a, std::span<const Complex> b, const Complex& z,
                           const PrecisionContext& ctx) {
  ctx.validate();
  if (a.size() > b.size()) fail(ErrorKind::DivergentParameters, "pFq requires p <= q");
  const long stop = [&] {
    long best = -1;
    for (const auto& x : a)
      if (x.im.is_zero() && x.re.is_integer() && x.re.sign() <= 0) {
        long n = -x.re.to_long();
        if (best < 0 || n < best) best = n;
      }
    return best;
  }();
  for (const auto& x : b) {
    long n = 0;
    if (x.re.sign() <= 0 && near_integer(x, ctx.precision_bits, n) && n <= 0 && (stop < 0 || -n < stop))
      fail(ErrorKind::PoleError, "pFq lower parameter " + std::to_string(n) + " is a non-positive integer");
  }
  // Positive terms cannot cancel; otherwise start with enough bits for the largest term.
  bool positive = z.im.is_zero() && z.re.sign() > 0;
  for (const auto& x : a) positive = positive && x.im.is_zero() && x.re.sign() > 0;
  for (const auto& x : b) positive = positive && x.im.is_zero() && x.re.sign() > 0;
  double peak = positive ? 0.0 : detail::pfq_peak_log2(a, b, z);
  return detail::with_escalation(
      ctx, peak,
      [&](long) {
        auto s = detail::pfq_series(a, b, z, ctx.max_terms);
        return detail::Attempt{std::move(s.value), s.log2_max_term};
      },
      "hypergeometric_pfq");
}

}  // namespace nfv
