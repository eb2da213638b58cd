// Residue series for Meijer G with repeated (higher-order) poles.
//
// The integrand is a product of factors Gamma(c + t s)^e (t, e = +-1) times z^s.
// Near a pole s0 every factor is written as sign * (pi / sin(pi eps))^{0 or e} * Gamma(u + tau eps)^E
// with Gamma(u) finite, so the Laurent coefficient needed for the residue follows from
// Gamma(u)^E, the polygammas psi^(j)(u) and log z. Consecutive poles shift every u by +-1,
// so gamma and polygamma values are carried forward by recurrences instead of being recomputed.

#include <array>

#include "meijer_internal.hpp"

namespace nfv {

namespace {

constexpr int kMaxPoleOrder = 4;

struct Factor {
  Complex c;  // argument is c + t s
  int t = 1;
  int e = 1;  // +1 numerator, -1 denominator
  // Carried state of the regular piece Gamma(u + tau eps)^E.
  bool valid = false;
  bool pole = false;
  long n = 0;  // argument at the pole is -n when `pole`
  Complex u;
  Complex gval;              // Gamma(u)
  std::vector<Complex> psi;  // psi^(j)(u), j = 0..derivs-1
};

Factor make_factor(Complex c, int t, int e) {
  Factor f;
  f.c = std::move(c);
  f.t = t;
  f.e = e;
  return f;
}

void fresh(Factor& f, int derivs) {
  f.gval = detail::gamma_raw(f.u);
  f.psi.clear();
  for (int j = 0; j < derivs; ++j) f.psi.push_back(detail::polygamma_raw(j, f.u));
  f.valid = true;
}

// u -> u + step, step = +-1.
void shift(Factor& f, int step) {
  auto correction = [&](const Complex& at, std::size_t j) {
    // (-1)^j j! / at^{j+1}
    Complex v = pow(at, -static_cast<long>(j + 1));
    long fact = 1;
    for (std::size_t i = 2; i <= j; ++i) fact *= static_cast<long>(i);
    v *= Real(j % 2 == 0 ? fact : -fact);
    return v;
  };
  if (step > 0) {
    for (std::size_t j = 0; j < f.psi.size(); ++j) f.psi[j] += correction(f.u, j);
    f.gval *= f.u;
    f.u += Complex(1L);
  } else {
    f.u -= Complex(1L);
    for (std::size_t j = 0; j < f.psi.size(); ++j) f.psi[j] -= correction(f.u, j);
    f.gval /= f.u;
  }
}

// Update the factor for the pole at s0; returns the sign and adds to the pole power.
int place(Factor& f, const Complex& s0, long exact_bits, int derivs, int& pole_power) {
  Complex x = f.c + (f.t > 0 ? s0 : -s0);
  long k = 0;
  const bool is_pole = near_integer(x, exact_bits, k) && k <= 0;
  const long n = is_pole ? -k : 0;
  if (f.valid && f.pole == is_pole && (!is_pole || n == f.n + (f.t > 0 ? -1 : 1))) {
    // Regular piece argument moved by t (regular) or -t (pole: u = 1 + n).
    shift(f, is_pole ? -f.t : f.t);
  } else {
    f.u = is_pole ? Complex(Real(1 + n)) : x;
    fresh(f, derivs);
  }
  f.pole = is_pole;
  f.n = n;
  if (!is_pole) return 1;
  pole_power += f.e;
  // Gamma(-n + t eps) = (-1)^n t (pi / sin(pi eps)) / Gamma(1 + n - t eps)
  return ((n % 2 == 0) ? 1 : -1) * f.t;
}

struct Series {
  std::array<Complex, kMaxPoleOrder> c;
};

// Residue of the integrand at s0 (all factors already placed); zero if no pole.
Complex residue(const std::vector<Factor>& factors, int sign, int pole_power, const Complex& s0, const Complex& log_z,
                const Complex& z) {
  if (pole_power <= 0) return Complex();
  if (pole_power > kMaxPoleOrder)
    fail(ErrorKind::UnsupportedMultiplicity, "pole of order " + std::to_string(pole_power) + " exceeds " +
                                                 std::to_string(kMaxPoleOrder));
  const int order = pole_power;  // need eps^{order-1}
  // Log-derivative coefficients c_j, j = 1..order-1.
  std::array<Complex, kMaxPoleOrder> cj{};
  Complex c0(1L);
  for (const auto& f : factors) {
    const int tau = f.pole ? -f.t : f.t;
    const int E = f.pole ? -f.e : f.e;
    if (E > 0)
      c0 *= f.gval;
    else
      c0 /= f.gval;
    long fact = 1;
    for (int j = 1; j < order; ++j) {
      fact *= j;
      Complex v = f.psi[static_cast<std::size_t>(j - 1)];
      int s = E * ((j % 2 == 0) ? 1 : tau);
      v /= Real(fact);
      if (s > 0)
        cj[static_cast<std::size_t>(j)] += v;
      else
        cj[static_cast<std::size_t>(j)] -= v;
    }
  }
  if (order > 1) cj[1] += log_z;
  // exp(sum c_j eps^j): e_k = (1/k) sum_j j c_j e_{k-j}
  std::array<Complex, kMaxPoleOrder> ex{};
  ex[0] = Complex(1L);
  for (int k = 1; k < order; ++k) {
    Complex acc;
    for (int j = 1; j <= k; ++j) acc += cj[static_cast<std::size_t>(j)] * ex[static_cast<std::size_t>(k - j)] * Real(j);
    ex[static_cast<std::size_t>(k)] = acc / Real(k);
  }
  // (pi eps / sin(pi eps))^order = 1 + order pi^2/6 eps^2 + O(eps^4)
  Complex coef = ex[static_cast<std::size_t>(order - 1)];
  if (order >= 3) {
    Real pi2 = const_pi();
    pi2 *= pi2;
    coef += ex[static_cast<std::size_t>(order - 3)] * (pi2 * Real(order) / Real(6L));
  }
  Complex r = c0 * coef * pow(z, s0);
  if (sign < 0) r = -r;
  return r;
}

}  // namespace

Complex eval_slater_confluent(const MeijerGSpec& spec, const Complex& z, const PrecisionContext& ctx) {
  ctx.validate();
  const PoleClass cls = validate_spec(spec);
  if (cls == PoleClass::ContourOnly) fail(ErrorKind::DivergentParameters, "residue series needs p < q");
  if (z.is_zero()) fail(ErrorKind::DomainError, "Meijer G residue series at z = 0");
  const long exact_bits = detail::confluence_bits(ctx);
  const auto& a = spec.a();
  const auto& b = spec.b();

  // Classes of b_1..b_m with exact integer gaps; offsets relative to the leftmost member.
  struct PoleClassGroup {
    Complex base;
    long last_onset = 0;
    int size = 0;
  };
  std::vector<PoleClassGroup> groups;
  {
    std::vector<bool> used(static_cast<std::size_t>(spec.m()), false);
    for (int i = 0; i < spec.m(); ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      std::vector<std::pair<int, long>> members{{i, 0}};
      used[static_cast<std::size_t>(i)] = true;
      for (int j = i + 1; j < spec.m(); ++j) {
        long k = 0;
        if (!used[static_cast<std::size_t>(j)] &&
            detail::integer_gap(b[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(i)], exact_bits, k)) {
          members.emplace_back(j, k);
          used[static_cast<std::size_t>(j)] = true;
        }
      }
      long lo = 0, hi = 0;
      int lo_index = i;
      for (auto [j, k] : members) {
        if (k < lo) {
          lo = k;
          lo_index = j;
        }
        hi = std::max(hi, k);
      }
      if (static_cast<int>(members.size()) > kMaxPoleOrder)
        fail(ErrorKind::UnsupportedMultiplicity, "more than " + std::to_string(kMaxPoleOrder) +
                                                     " b-parameters in one integer-spaced class");
      groups.push_back({b[static_cast<std::size_t>(lo_index)], hi - lo, static_cast<int>(members.size())});
    }
  }

  return detail::with_escalation(
      ctx, detail::residue_peak_log2(spec, z),
      [&](long bits) {
        const Complex log_z = log(z);
        Complex total;
        double scale = -INFINITY;
        for (const auto& g : groups) {
          const int derivs = std::max(0, g.size - 1);
          std::vector<Factor> factors;
          for (int j = 0; j < spec.q(); ++j) {
            const Complex& bj = b[static_cast<std::size_t>(j)];
            if (j < spec.m())
              factors.push_back(make_factor(bj, -1, 1));
            else
              factors.push_back(make_factor(Complex(1L) - bj, 1, -1));
          }
          for (int j = 0; j < spec.p(); ++j) {
            const Complex& aj = a[static_cast<std::size_t>(j)];
            if (j < spec.n())
              factors.push_back(make_factor(Complex(1L) - aj, 1, 1));
            else
              factors.push_back(make_factor(aj, -1, -1));
          }
          double class_max = -INFINITY;
          long argmax = 0;
          int small = 0;
          for (long k = 0;; ++k) {
            if (k > ctx.max_terms) fail(ErrorKind::NoConvergence, "confluent residue series exceeded max_terms");
            Complex s0 = g.base + Complex(Real(k));
            int sign = 1;
            int pole_power = 0;
            for (auto& f : factors) sign *= place(f, s0, exact_bits, derivs, pole_power);
            Complex r = residue(factors, sign, pole_power, s0, log_z, z);
            total -= r;
            double lr = r.log2_abs();
            if (lr > class_max) {
              class_max = lr;
              argmax = k;
            }
            if (k > g.last_onset && k > argmax + 1 && (r.is_zero() || lr < class_max - static_cast<double>(bits))) {
              if (++small >= 3) break;
            } else {
              small = 0;
            }
          }
          scale = std::max(scale, class_max);
        }
        return detail::Attempt{std::move(total), scale};
      },
      "eval_slater_confluent");
}

}  // namespace nfv
