#pragma once

#include <string>

#include "nfv/errors.hpp"
#include "nfv/mp.hpp"
#include "nfv/precision.hpp"

namespace nfv::test {

inline Complex C(const char* re, const char* im = "0") {
  WorkingPrecision wp(400);
  return Complex(Real(std::string_view(re)), Real(std::string_view(im)));
}

inline Complex C(double re, double im = 0.0) { return Complex(re, im); }

// |a - b| / max(|b|, tiny), as a double.
inline double rel_err(const Complex& a, const Complex& b) {
  WorkingPrecision wp(400);
  Real diff = abs(a - b);
  Real ref = abs(b);
  if (ref.is_zero()) return diff.to_double();
  return (diff / ref).to_double();
}

inline double abs_err(const Complex& a, const Complex& b) {
  WorkingPrecision wp(400);
  return abs(a - b).to_double();
}

// Kind of the Error thrown by f; IoError as a sentinel when nothing is thrown.
inline ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::IoError;
}

inline PrecisionContext ctx_bits(long bits) { return PrecisionContext::with_precision(bits); }

}  // namespace nfv::test
