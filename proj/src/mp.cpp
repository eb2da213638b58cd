#include "nfv/mp.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "nfv/errors.hpp"

namespace nfv {

namespace {
thread_local mpfr_prec_t g_working_precision = 256;

inline bool released(mpfr_srcptr v) { return v->_mpfr_d == nullptr; }
}  // namespace

mpfr_prec_t working_precision() noexcept { return g_working_precision; }

WorkingPrecision::WorkingPrecision(long bits) : saved_(g_working_precision) {
  if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) fail(ErrorKind::DomainError, "invalid precision");
  g_working_precision = static_cast<mpfr_prec_t>(bits);
}

WorkingPrecision::~WorkingPrecision() { g_working_precision = saved_; }

// ---------------------------------------------------------------- Real

Real::Real() {
  mpfr_init2(v_, g_working_precision);
  mpfr_set_zero(v_, 1);
}

Real::Real(int v) : Real(static_cast<long>(v)) {}

Real::Real(long v) {
  mpfr_init2(v_, std::max<mpfr_prec_t>(g_working_precision, 64));
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(double v) {
  mpfr_init2(v_, std::max<mpfr_prec_t>(g_working_precision, 53));
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(std::string_view decimal) {
  mpfr_init2(v_, g_working_precision);
  std::string s(decimal);
  if (s.empty() || mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0 || !mpfr_number_p(v_)) {
    mpfr_clear(v_);
    fail(ErrorKind::FormatError, "not a decimal number: '" + s + "'");
  }
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  other.v_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (released(v_)) {
    mpfr_init2(v_, other.precision());
  } else if (precision() != other.precision()) {
    mpfr_set_prec(v_, other.precision());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  if (!released(v_)) mpfr_clear(v_);
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  other.v_->_mpfr_d = nullptr;
  return *this;
}

Real::~Real() {
  if (!released(v_)) mpfr_clear(v_);
}

Real Real::with_precision(mpfr_prec_t bits) {
  WorkingPrecision wp(bits);
  return Real();
}

Real Real::rational(long num, long den) {
  Real r(num);
  Real out;
  mpfr_div_si(out.get(), r.get(), den, MPFR_RNDN);
  return out;
}

long Real::to_long() const {
  if (!mpfr_fits_slong_p(v_, MPFR_RNDN)) fail(ErrorKind::DomainError, "value does not fit in a long");
  return mpfr_get_si(v_, MPFR_RNDN);
}

double Real::log2_abs() const noexcept {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  if (!mpfr_number_p(v_)) return std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return static_cast<double>(e) + std::log2(std::fabs(m));
}

std::string Real::to_string(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  if (!mpfr_number_p(v_)) return mpfr_nan_p(v_) ? "nan" : (mpfr_sgn(v_) > 0 ? "inf" : "-inf");
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string m(raw);
  mpfr_free_str(raw);
  std::string out;
  if (m[0] == '-') {
    out.push_back('-');
    m.erase(0, 1);
  }
  // Trim trailing zeros of the mantissa but keep at least one digit.
  while (m.size() > 1 && m.back() == '0') m.pop_back();
  out.push_back(m[0]);
  if (m.size() > 1) {
    out.push_back('.');
    out.append(m, 1, std::string::npos);
  }
  long exponent = static_cast<long>(e) - 1;
  if (exponent != 0) out += "e" + std::to_string(exponent);
  return out;
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::mul_2si(long k) {
  mpfr_mul_2si(v_, v_, k, MPFR_RNDN);
  return *this;
}

#define NFV_BINARY(op, fn)                      \
  Real operator op(const Real& a, const Real& b) { \
    Real r;                                     \
    fn(r.get(), a.get(), b.get(), MPFR_RNDN);   \
    return r;                                   \
  }
NFV_BINARY(+, mpfr_add)
NFV_BINARY(-, mpfr_sub)
NFV_BINARY(*, mpfr_mul)
NFV_BINARY(/, mpfr_div)
#undef NFV_BINARY

Real operator-(const Real& a) {
  Real r;
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }

#define NFV_UNARY(name, fn)        \
  Real name(const Real& x) {       \
    Real r;                        \
    fn(r.get(), x.get(), MPFR_RNDN); \
    return r;                      \
  }
NFV_UNARY(abs, mpfr_abs)
NFV_UNARY(sqrt, mpfr_sqrt)
NFV_UNARY(exp, mpfr_exp)
NFV_UNARY(expm1, mpfr_expm1)
NFV_UNARY(log, mpfr_log)
NFV_UNARY(log1p, mpfr_log1p)
NFV_UNARY(sin, mpfr_sin)
NFV_UNARY(cos, mpfr_cos)
NFV_UNARY(sinh, mpfr_sinh)
NFV_UNARY(cosh, mpfr_cosh)
#undef NFV_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r = Real::with_precision(std::max(x.precision(), working_precision()));
  mpfr_floor(r.get(), x.get());
  return r;
}

Real round(const Real& x) {
  Real r = Real::with_precision(std::max(x.precision(), working_precision()));
  mpfr_round(r.get(), x.get());
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

namespace {
// x = n + r with n = round(x), |r| <= 1/2; r is exact.
void reduce_half(const Real& x, Real& r, bool& odd) {
  Real n = round(x);
  r = Real::with_precision(std::max(x.precision(), working_precision()));
  mpfr_sub(r.get(), x.get(), n.get(), MPFR_RNDN);
  odd = mpfr_integer_p(n.get()) && mpfr_fits_slong_p(n.get(), MPFR_RNDN) ? (mpfr_get_si(n.get(), MPFR_RNDN) & 1) != 0
                                                                           : false;
  if (!mpfr_fits_slong_p(n.get(), MPFR_RNDN)) {
    Real half = ldexp(n, -1);
    odd = !mpfr_integer_p(half.get());
  }
}
}  // namespace

Real sin_pi(const Real& x) {
  Real r;
  bool odd = false;
  reduce_half(x, r, odd);
  Real out = sin(const_pi() * r);
  return odd ? -out : out;
}

Real cos_pi(const Real& x) {
  Real r;
  bool odd = false;
  reduce_half(x, r, odd);
  Real out = cos(const_pi() * r);
  return odd ? -out : out;
}

Real ldexp(const Real& x, long k) {
  Real r = Real::with_precision(x.precision());
  mpfr_mul_2si(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real const_pi() {
  Real r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real const_euler() {
  Real r;
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

Real const_log2() {
  Real r;
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

Real epsilon_bits(long bits) {
  Real r(1L);
  r.mul_2si(-bits);
  return r;
}

// ---------------------------------------------------------------- Complex

Complex::Complex(Real r) : re(std::move(r)), im(Real::with_precision(re.precision())) {}
Complex::Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
Complex::Complex(int r) : re(r), im() {}
Complex::Complex(long r) : re(r), im() {}
Complex::Complex(double r) : re(r), im() {}
Complex::Complex(double r, double i) : re(r), im(i) {}

double Complex::log2_abs() const noexcept {
  double a = re.log2_abs();
  double b = im.log2_abs();
  double m = std::max(a, b);
  if (!std::isfinite(m)) return m;
  double d = std::min(a, b) - m;
  return m + 0.5 * std::log2(1.0 + std::exp2(2.0 * d));
}

Complex Complex::rounded() const {
  Complex out;
  mpfr_set(out.re.get(), re.get(), MPFR_RNDN);
  mpfr_set(out.im.get(), im.get(), MPFR_RNDN);
  return out;
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  if (o.im.is_zero()) return *this *= o.re;
  if (im.is_zero()) {
    Real r = re;
    mpfr_mul(re.get(), r.get(), o.re.get(), MPFR_RNDN);
    mpfr_mul(im.get(), r.get(), o.im.get(), MPFR_RNDN);
    return *this;
  }
  Real r = Real::with_precision(re.precision());
  mpfr_fmms(r.get(), re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
  mpfr_fmma(im.get(), re.get(), o.im.get(), im.get(), o.re.get(), MPFR_RNDN);
  re = std::move(r);
  return *this;
}

Complex& Complex::operator*=(const Real& o) {
  re *= o;
  im *= o;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.im.is_zero()) return *this /= o.re;
  Real den = Real::with_precision(re.precision() + 16);
  mpfr_fmma(den.get(), o.re.get(), o.re.get(), o.im.get(), o.im.get(), MPFR_RNDN);
  Real r = Real::with_precision(re.precision() + 16);
  Real i = Real::with_precision(re.precision() + 16);
  mpfr_fmma(r.get(), re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
  mpfr_fmms(i.get(), im.get(), o.re.get(), re.get(), o.im.get(), MPFR_RNDN);
  mpfr_div(re.get(), r.get(), den.get(), MPFR_RNDN);
  mpfr_div(im.get(), i.get(), den.get(), MPFR_RNDN);
  return *this;
}

Complex& Complex::operator/=(const Real& o) {
  re /= o;
  im /= o;
  return *this;
}

Complex& Complex::mul_2si(long k) {
  re.mul_2si(k);
  im.mul_2si(k);
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }

Complex operator*(const Complex& a, const Complex& b) {
  Complex out;
  if (b.im.is_zero()) {
    mpfr_mul(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(out.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  } else if (a.im.is_zero()) {
    mpfr_mul(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(out.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  } else {
    mpfr_fmms(out.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmma(out.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  }
  return out;
}

Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
Complex operator*(const Real& a, const Complex& b) { return Complex(a * b.re, a * b.im); }

Complex operator/(const Complex& a, const Complex& b) {
  Complex out = a.rounded();
  out /= b;
  return out;
}

Complex operator/(const Complex& a, const Real& b) { return Complex(a.re / b, a.im / b); }
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real norm(const Complex& z) {
  Real r;
  mpfr_fmma(r.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex expi(const Real& theta) {
  Complex out;
  mpfr_sin_cos(out.im.get(), out.re.get(), theta.get(), MPFR_RNDN);
  return out;
}

Complex exp(const Complex& z) {
  if (z.im.is_zero()) return Complex(exp(z.re));
  Real m = exp(z.re);
  Complex out = expi(z.im);
  out *= m;
  return out;
}

Complex log(const Complex& z) {
  if (z.is_zero()) fail(ErrorKind::DomainError, "log of zero");
  if (z.im.is_zero() && z.re.sign() > 0) return Complex(log(z.re));
  // log|z| computed as log of hypot avoids overflow and keeps relative accuracy.
  return Complex(log(abs(z)), arg(z));
}

Complex sqrt(const Complex& z) {
  if (z.im.is_zero()) {
    if (z.re.sign() >= 0) return Complex(sqrt(z.re));
    return Complex(Real(), sqrt(-z.re));
  }
  Real m = abs(z);
  Real t = sqrt(ldexp(m + abs(z.re), -1));
  if (z.re.sign() >= 0) return Complex(t, z.im / ldexp(t, 1));
  Real u = z.im.sign() >= 0 ? t : -t;
  return Complex(abs(z.im) / ldexp(t, 1), u);
}

Complex pow(const Complex& z, const Complex& w) {
  if (w.is_zero()) return Complex(1L);
  if (z.is_zero()) {
    if (w.re.sign() > 0) return Complex();
    fail(ErrorKind::DomainError, "0 raised to a power with non-positive real part");
  }
  if (z.im.is_zero() && z.re.sign() > 0 && w.im.is_zero()) return Complex(pow(z.re, w.re));
  return exp(w * log(z));
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(1L) / pow(z, -n);
  Complex result(1L);
  Complex base = z.rounded();
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Complex pow(const Real& x, const Complex& w) {
  if (x.sign() <= 0) fail(ErrorKind::DomainError, "real base must be positive");
  if (w.im.is_zero()) return Complex(pow(x, w.re));
  Real lx = log(x);
  Real m = exp(lx * w.re);
  Complex out = expi(lx * w.im);
  out *= m;
  return out;
}

Complex sin(const Complex& z) {
  if (z.im.is_zero()) return Complex(sin(z.re));
  Real s, c;
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
  return Complex(s * cosh(z.im), c * sinh(z.im));
}

Complex cos(const Complex& z) {
  if (z.im.is_zero()) return Complex(cos(z.re));
  Real s, c;
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
  return Complex(c * cosh(z.im), -(s * sinh(z.im)));
}

Complex sin_pi(const Complex& z) {
  if (z.im.is_zero()) return Complex(sin_pi(z.re));
  Real y = const_pi() * z.im;
  return Complex(sin_pi(z.re) * cosh(y), cos_pi(z.re) * sinh(y));
}

Complex cos_pi(const Complex& z) {
  if (z.im.is_zero()) return Complex(cos_pi(z.re));
  Real y = const_pi() * z.im;
  return Complex(cos_pi(z.re) * cosh(y), -(sin_pi(z.re) * sinh(y)));
}

double distance_to_nonpositive_integer(const Complex& z) {
  double x = z.re.to_double();
  double y = z.im.to_double();
  if (x > 0.5) return std::numeric_limits<double>::infinity();
  double n = std::min(0.0, std::round(x));
  return std::hypot(x - n, y);
}

bool near_integer(const Complex& z, long bits, long& n) {
  WorkingPrecision wp(std::max<long>(z.re.precision(), 64));
  if (!mpfr_fits_slong_p(z.re.get(), MPFR_RNDN)) return false;
  Real r = round(z.re);
  Real tol = epsilon_bits(bits);
  Real dx = abs(z.re - r);
  if (dx > tol || abs(z.im) > tol) return false;
  n = r.to_long();
  return true;
}

}  // namespace nfv
