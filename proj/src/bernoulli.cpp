// Bernoulli numbers from tangent numbers (Brent-Harvey recurrence), exact in GMP.

#include <gmpxx.h>

#include <map>
#include <mutex>

#include "internal.hpp"

namespace nfv::detail {

namespace {

std::mutex g_mutex;
std::vector<mpq_class> g_exact;  // g_exact[k-1] = B_{2k}
std::map<long, std::shared_ptr<const std::vector<Real>>> g_bernoulli;
std::map<long, std::shared_ptr<const std::vector<Real>>> g_stirling;

void extend_exact(std::size_t n) {
  if (g_exact.size() >= n) return;
  n = std::max(n, 2 * g_exact.size());
  std::vector<mpz_class> t(n + 1);
  t[1] = 1;
  for (std::size_t k = 2; k <= n; ++k) t[k] = static_cast<unsigned long>(k - 1) * t[k - 1];
  for (std::size_t k = 2; k <= n; ++k)
    for (std::size_t j = k; j <= n; ++j)
      t[j] = static_cast<unsigned long>(j - k) * t[j - 1] + static_cast<unsigned long>(j - k + 2) * t[j];
  g_exact.clear();
  for (std::size_t k = 1; k <= n; ++k) {
    mpz_class pow4 = 1;
    mpz_mul_2exp(pow4.get_mpz_t(), pow4.get_mpz_t(), 2 * k);
    mpz_class den = pow4 * (pow4 - 1);
    mpz_class num = static_cast<unsigned long>(2 * k) * t[k];
    if (k % 2 == 0) num = -num;
    mpq_class b(num, den);
    b.canonicalize();
    g_exact.push_back(b);
  }
}

std::shared_ptr<const std::vector<Real>> build(long bits, std::size_t n, bool stirling) {
  extend_exact(n);
  auto out = std::make_shared<std::vector<Real>>();
  out->reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mpq_class q = g_exact[k - 1];
    if (stirling) q /= mpq_class(static_cast<unsigned long>(2 * k * (2 * k - 1)));
    Real r = Real::with_precision(bits);
    mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
    out->push_back(std::move(r));
  }
  return out;
}

std::shared_ptr<const std::vector<Real>> lookup(std::map<long, std::shared_ptr<const std::vector<Real>>>& cache,
                                                long bits, std::size_t n, bool stirling) {
  std::lock_guard lock(g_mutex);
  auto it = cache.find(bits);
  if (it != cache.end() && it->second->size() >= n) return it->second;
  std::size_t target = std::max<std::size_t>(n, it == cache.end() ? 32 : 2 * it->second->size());
  auto built = build(bits, target, stirling);
  cache[bits] = built;
  return built;
}

}  // namespace

std::shared_ptr<const std::vector<Real>> bernoulli_reals(long bits, std::size_t n) {
  return lookup(g_bernoulli, bits, n, false);
}

std::shared_ptr<const std::vector<Real>> stirling_coefficients(long bits, std::size_t n) {
  return lookup(g_stirling, bits, n, true);
}

}  // namespace nfv::detail
