#pragma once

// Multiprecision scalars. Real owns one mpfr_t; Complex is a pair of Reals.
// Freshly computed values carry the calling thread's working precision,
// which WorkingPrecision sets for a scope.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace nfv {

[[nodiscard]] mpfr_prec_t working_precision() noexcept;

class WorkingPrecision {
 public:
  explicit WorkingPrecision(long bits);
  ~WorkingPrecision();
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real();
  Real(int v);     // NOLINT(google-explicit-constructor)
  Real(long v);    // NOLINT(google-explicit-constructor)
  Real(double v);  // NOLINT(google-explicit-constructor)
  explicit Real(std::string_view decimal);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real with_precision(mpfr_prec_t bits);
  static Real rational(long num, long den);

  [[nodiscard]] mpfr_ptr get() noexcept { return v_; }
  [[nodiscard]] mpfr_srcptr get() const noexcept { return v_; }
  [[nodiscard]] mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

  [[nodiscard]] double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  [[nodiscard]] long to_long() const;  // nearest integer, throws DomainError if out of range
  // log2|x| as a double; -inf for zero. Cheap magnitude estimate.
  [[nodiscard]] double log2_abs() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  [[nodiscard]] bool is_integer() const noexcept { return mpfr_integer_p(v_) != 0; }
  [[nodiscard]] int sign() const noexcept { return mpfr_sgn(v_); }
  // Scientific decimal string with `digits` significant digits.
  [[nodiscard]] std::string to_string(int digits) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& mul_2si(long k);  // *= 2^k, exact

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
bool operator==(const Real& a, const Real& b);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real round(const Real& x);
Real hypot(const Real& x, const Real& y);
Real sin_pi(const Real& x);  // sin(pi x), accurate near integers
Real cos_pi(const Real& x);
Real ldexp(const Real& x, long k);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real const_pi();
Real const_euler();
Real const_log2();
// 2^-bits, exact.
Real epsilon_bits(long bits);

class Complex {
 public:
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r);          // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i);
  Complex(int r);           // NOLINT(google-explicit-constructor)
  Complex(long r);          // NOLINT(google-explicit-constructor)
  Complex(double r);        // NOLINT(google-explicit-constructor)
  Complex(double r, double i);

  [[nodiscard]] bool is_real() const noexcept { return im.is_zero(); }
  [[nodiscard]] bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] bool is_finite() const noexcept { return re.is_finite() && im.is_finite(); }
  // log2|z| estimate (max of component magnitudes, within half a bit).
  [[nodiscard]] double log2_abs() const noexcept;
  // Copy rounded to the current working precision.
  [[nodiscard]] Complex rounded() const;

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& o);
  Complex& operator/=(const Complex& o);
  Complex& operator/=(const Real& o);
  Complex& mul_2si(long k);
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator-(const Complex& a);
bool operator==(const Complex& a, const Complex& b);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, const Complex& w);  // exp(w log z), principal
Complex pow(const Complex& z, long n);
Complex pow(const Real& x, const Complex& w);  // x > 0
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex sin_pi(const Complex& z);
Complex cos_pi(const Complex& z);
Complex expi(const Real& theta);  // e^{i theta}

// Distance from z to the nearest integer <= 0 (infinite if Re z > 0.5).
double distance_to_nonpositive_integer(const Complex& z);
// True when z is within 2^-bits of an integer; sets n to that integer.
bool near_integer(const Complex& z, long bits, long& n);

}  // namespace nfv
