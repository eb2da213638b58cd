#pragma once

// Randomized identity checks for the scalar kernels, shared by the unit and acceptance suites.

#include <string>
#include <vector>

#include "nfv/mp.hpp"

namespace nfv::props {

struct PropertyResult {
  std::string name;
  long points = 0;
  long precision_bits = 0;
  // Largest |lhs/rhs - 1| over the points, in units of 2^-precision_bits.
  double worst_ulps = 0;
  // Left-hand sides in point order, for determinism checks.
  std::vector<Complex> values;
};

// Gamma(z) Gamma(1-z) sin(pi z) / pi = 1 for 0 < Re z < 1, |Im z| <= 5.
[[nodiscard]] PropertyResult reflection(long bits, int jobs, long count = 100, unsigned seed = 1);
// Gamma(z) Gamma(z+1/2) = 2^{1-2z} sqrt(pi) Gamma(2z).
[[nodiscard]] PropertyResult duplication(long bits, int jobs, long count = 100, unsigned seed = 2);
// K_nu(z) = (pi/2)(I_{-nu}(z) - I_nu(z)) / sin(nu pi) for non-integer nu.
[[nodiscard]] PropertyResult k_from_i(long bits, int jobs, long count = 100, unsigned seed = 3);
// 0F3(;1+nu,1/2+nu,1/2; w^2/16) = (0F1(;1+2nu;w) + 0F1(;1+2nu;-w)) / 2 for |w| <= 10.
[[nodiscard]] PropertyResult split_0f3(long bits, int jobs, long count = 100, unsigned seed = 4);

[[nodiscard]] std::vector<PropertyResult> all_properties(long bits, int jobs);

}  // namespace nfv::props
