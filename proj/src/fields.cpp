// Number-field descriptors, v_K counts, divisor sums and Dedekind zeta values.

#include "nfv/fields.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "internal.hpp"
#include "nfv/numerics.hpp"

namespace nfv {

namespace {

bool squarefree(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

long positive_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Jacobi symbol (a/n) for odd n > 0.
int jacobi(long a, long n) {
  a = positive_mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// chi(1..q) for the character of a fundamental discriminant, periodic mod q = |delta|.
std::vector<int> character_table(long delta) {
  const long q = std::labs(delta);
  std::vector<int> chi(static_cast<std::size_t>(q));
  for (long a = 0; a < q; ++a) chi[static_cast<std::size_t>(a)] = a == 0 ? 0 : kronecker_symbol(delta, a);
  return chi;
}

// L(1, chi_delta) from the classical finite sums, at the current working precision.
Real l_at_one(long delta) {
  const long q = std::labs(delta);
  auto chi = character_table(delta);
  Real sum;
  if (delta < 0) {
    long acc = 0;
    for (long a = 1; a < q; ++a) acc += chi[static_cast<std::size_t>(a)] * a;
    sum = const_pi() * Real(-acc) / pow(Real(q), Real::rational(3, 2));
  } else {
    for (long a = 1; a < q; ++a) {
      int c = chi[static_cast<std::size_t>(a)];
      if (c == 0) continue;
      Real t = log(sin_pi(Real::rational(a, q)));
      if (c > 0)
        sum -= t;
      else
        sum += t;
    }
    sum /= sqrt(Real(q));
  }
  return sum;
}

long parse_long(std::string_view text, const char* what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorKind::FormatError, std::string("bad integer in ") + what + ": '" + std::string(text) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

long VkTable::at(long m) const {
  if (m < 1) fail(ErrorKind::DomainError, "norm must be positive");
  if (m > max_norm)
    fail(ErrorKind::OutOfTableRange, "norm " + std::to_string(m) + " beyond table max " + std::to_string(max_norm));
  return counts[static_cast<std::size_t>(m)];
}

Real NumberField::residue_H(const PrecisionContext& ctx) const {
  WorkingPrecision wp(ctx.work_bits());
  Real h;
  switch (source) {
    case CoefficientSource::Rational:
      h = Real(1L);
      break;
    case CoefficientSource::QuadraticCharacter:
      h = l_at_one(discriminant);
      break;
    case CoefficientSource::Table:
      h = Real(std::string_view(residue_decimal));
      break;
  }
  WorkingPrecision out(ctx.precision_bits);
  Real r = Real::with_precision(ctx.precision_bits);
  mpfr_set(r.get(), h.get(), MPFR_RNDN);
  return r;
}

std::string NumberField::label() const {
  switch (source) {
    case CoefficientSource::Rational:
      return "Q";
    case CoefficientSource::QuadraticCharacter:
      return "Q(sqrt(" + std::to_string(discriminant) + "))";
    case CoefficientSource::Table:
      break;
  }
  return "table(d=" + std::to_string(degree) + ",disc=" + std::to_string(discriminant) + ")";
}

bool is_fundamental_discriminant(long delta) {
  if (delta == 0 || delta == 1) return false;
  long r = positive_mod(delta, 4);
  if (r == 1) return squarefree(delta);
  if (r == 0) {
    long m = delta / 4;
    long rm = positive_mod(m, 4);
    return (rm == 2 || rm == 3) && squarefree(m);
  }
  return false;
}

NumberField field_from_discriminant(long delta) {
  NumberField f;
  if (delta == 1) return f;
  if (!is_fundamental_discriminant(delta))
    fail(ErrorKind::NotFundamental, std::to_string(delta) + " is not a fundamental discriminant");
  f.degree = 2;
  f.r1 = delta > 0 ? 2 : 0;
  f.r2 = delta > 0 ? 0 : 1;
  f.discriminant = delta;
  f.abs_discriminant = std::labs(delta);
  f.source = CoefficientSource::QuadraticCharacter;
  return f;
}

int kronecker_symbol(long delta, long n) {
  if (n <= 0) fail(ErrorKind::DomainError, "kronecker_symbol needs n > 0");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (delta % 2 == 0) return 0;
    long r = positive_mod(delta, 8);
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(delta, n);
}

long ideal_count_vk(const NumberField& field, long m) {
  if (m < 1) fail(ErrorKind::DomainError, "ideal_count_vk needs m >= 1");
  switch (field.source) {
    case CoefficientSource::Rational:
      return 1;
    case CoefficientSource::QuadraticCharacter: {
      long total = 0;
      for (long e = 1; e * e <= m; ++e) {
        if (m % e != 0) continue;
        total += kronecker_symbol(field.discriminant, e);
        if (e * e != m) total += kronecker_symbol(field.discriminant, m / e);
      }
      return total;
    }
    case CoefficientSource::Table:
      return field.table->at(m);
  }
  return 0;
}

VkTable vk_table(const NumberField& field, long max_norm) {
  if (max_norm < 1) fail(ErrorKind::DomainError, "max_norm must be positive");
  VkTable t;
  t.max_norm = max_norm;
  const auto size = static_cast<std::size_t>(max_norm) + 1;
  switch (field.source) {
    case CoefficientSource::Rational:
      t.counts.assign(size, 1);
      t.counts[0] = 0;
      break;
    case CoefficientSource::QuadraticCharacter: {
      t.counts.assign(size, 0);
      auto chi = character_table(field.discriminant);
      const long q = field.abs_discriminant;
      for (long e = 1; e <= max_norm; ++e) {
        int c = chi[static_cast<std::size_t>(e % q)];
        if (c == 0) continue;
        for (long m = e; m <= max_norm; m += e) t.counts[static_cast<std::size_t>(m)] += c;
      }
      break;
    }
    case CoefficientSource::Table:
      if (max_norm > field.table->max_norm)
        fail(ErrorKind::OutOfTableRange, "requested " + std::to_string(max_norm) + " norms, table has " +
                                             std::to_string(field.table->max_norm));
      t.counts.assign(field.table->counts.begin(), field.table->counts.begin() + static_cast<std::ptrdiff_t>(size));
      break;
  }
  return t;
}

std::vector<Complex> divisor_sigma_range(const NumberField& field, const Complex& a, long n_max) {
  VkTable v = field.source == CoefficientSource::Table ? vk_table(field, n_max)
                                                       : cached_vk_table(field.discriminant, n_max);
  std::vector<Complex> sigma(static_cast<std::size_t>(n_max) + 1);
  for (long j = 1; j <= n_max; ++j) {
    long c = v.counts[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    Complex t = a.is_zero() ? Complex(Real(c)) : pow(Real(j), a) * Real(c);
    for (long m = j; m <= n_max; m += j) sigma[static_cast<std::size_t>(m)] += t;
  }
  return sigma;
}

Complex divisor_sigma(const NumberField& field, const Complex& a, long n, const PrecisionContext& ctx) {
  ctx.validate();
  if (n < 1) fail(ErrorKind::DomainError, "divisor_sigma needs n >= 1");
  Complex sum;
  {
    WorkingPrecision wp(ctx.work_bits());
    for (long j = 1; j * j <= n; ++j) {
      if (n % j != 0) continue;
      for (long e : {j, n / j}) {
        long c = ideal_count_vk(field, e);
        if (c != 0) sum += pow(Real(e), a) * Real(c);
        if (j * j == n) break;
      }
    }
  }
  WorkingPrecision out(ctx.precision_bits);
  return sum.rounded();
}

Complex dirichlet_L(long delta, const Complex& s, const PrecisionContext& ctx) {
  ctx.validate();
  if (!is_fundamental_discriminant(delta))
    fail(ErrorKind::NotFundamental, std::to_string(delta) + " is not a fundamental discriminant");
  long one = 0;
  if (near_integer(s - Complex(1L), ctx.precision_bits, one) && one == 0) {
    Real r = field_from_discriminant(delta).residue_H(ctx);
    return Complex(std::move(r));
  }
  const long q = std::labs(delta);
  auto chi = character_table(delta);
  return detail::with_escalation(
      ctx, 0.0,
      [&](long bits) {
        PrecisionContext sub = ctx.at_precision(bits);
        Complex sum;
        double scale = -INFINITY;
        for (long a = 1; a < q; ++a) {
          int c = chi[static_cast<std::size_t>(a)];
          if (c == 0) continue;
          Complex z = hurwitz_zeta(s, Real::rational(a, q), sub);
          scale = std::max(scale, z.log2_abs());
          if (c > 0)
            sum += z;
          else
            sum -= z;
        }
        Complex factor = pow(Real(q), -s);
        detail::Attempt out;
        out.value = sum * factor;
        out.log2_scale = scale + factor.log2_abs();
        return out;
      },
      "dirichlet_L");
}

Complex dedekind_zeta(const NumberField& field, const Complex& s, const PrecisionContext& ctx) {
  ctx.validate();
  long one = 0;
  if (near_integer(s - Complex(1L), ctx.precision_bits, one) && one == 0)
    fail(ErrorKind::PoleError, "Dedekind zeta pole at s = 1");
  switch (field.source) {
    case CoefficientSource::Rational:
      return riemann_zeta(s, ctx);
    case CoefficientSource::QuadraticCharacter: {
      PrecisionContext sub = ctx.at_precision(ctx.precision_bits + 8);
      Complex z = riemann_zeta(s, sub) * dirichlet_L(field.discriminant, s, sub);
      WorkingPrecision out(ctx.precision_bits);
      return z.rounded();
    }
    case CoefficientSource::Table:
      break;
  }
  // Table fields: truncated Dirichlet series, accepted only when the tail estimate is below tolerance.
  const double sigma = s.re.to_double();
  if (!(sigma > 1.0)) fail(ErrorKind::ContinuationUnavailable, "table fields have no continuation to Re(s) <= 1");
  const long m_max = field.table->max_norm;
  const double h = field.residue_H(PrecisionContext::with_precision(64)).to_double();
  const double tail = h * std::pow(static_cast<double>(m_max), 1.0 - sigma) / (sigma - 1.0);
  Complex sum;
  {
    WorkingPrecision wp(ctx.work_bits());
    for (long m = 1; m <= m_max; ++m) {
      long c = field.table->counts[static_cast<std::size_t>(m)];
      if (c != 0) sum += pow(Real(m), -s) * Real(c);
    }
  }
  if (tail > ctx.target_rel_tol * std::exp2(sum.log2_abs()))
    fail(ErrorKind::ContinuationUnavailable, "table too short for the requested tolerance at this s (tail ~ " +
                                                 std::to_string(tail) + ")");
  WorkingPrecision out(ctx.precision_bits);
  return sum.rounded();
}

VkTable parse_vk_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "norm,count") fail(ErrorKind::FormatError, "missing header 'norm,count'");
  VkTable t;
  t.counts.push_back(0);
  long expected = 1;
  while (std::getline(in, line)) {
    auto row = trim(line);
    if (row.empty()) continue;
    auto comma = row.find(',');
    if (comma == std::string_view::npos) fail(ErrorKind::FormatError, "row without comma: '" + std::string(row) + "'");
    long m = parse_long(trim(row.substr(0, comma)), "norm column");
    long c = parse_long(trim(row.substr(comma + 1)), "count column");
    if (m != expected) fail(ErrorKind::FormatError, "expected norm " + std::to_string(expected) + ", got " + std::to_string(m));
    if (c < 0) fail(ErrorKind::FormatError, "negative count at norm " + std::to_string(m));
    t.counts.push_back(c);
    ++expected;
  }
  t.max_norm = expected - 1;
  if (t.max_norm < 1) fail(ErrorKind::FormatError, "empty v_K table");
  return t;
}

std::string format_vk_csv(const VkTable& table) {
  std::string out = "norm,count\n";
  for (long m = 1; m <= table.max_norm; ++m)
    out += std::to_string(m) + "," + std::to_string(table.counts[static_cast<std::size_t>(m)]) + "\n";
  return out;
}

void validate_vk_table(const VkTable& table) {
  if (table.max_norm < 1 || table.counts.size() != static_cast<std::size_t>(table.max_norm) + 1)
    fail(ErrorKind::FormatError, "inconsistent v_K table size");
  if (table.counts[1] != 1) fail(ErrorKind::MultiplicativityViolation, "v_K(1) must be 1");
  for (long m = 1; m <= table.max_norm; ++m)
    if (table.counts[static_cast<std::size_t>(m)] < 0) fail(ErrorKind::FormatError, "negative v_K entry");
  int checked = 0;
  for (long m = 2; m * (m + 1) <= table.max_norm && checked < 1000; ++m) {
    for (long n = m + 1; m * n <= table.max_norm && checked < 1000; ++n) {
      if (std::gcd(m, n) != 1) continue;
      ++checked;
      if (table.at(m * n) != table.at(m) * table.at(n))
        fail(ErrorKind::MultiplicativityViolation, "v_K(" + std::to_string(m * n) + ") != v_K(" + std::to_string(m) +
                                                       ") v_K(" + std::to_string(n) + ")");
    }
  }
}

FieldMetadata parse_field_metadata(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::FormatError, std::string("metadata is not valid JSON: ") + e.what());
  }
  FieldMetadata m;
  try {
    m.degree = j.at("degree").get<int>();
    m.r1 = j.at("r1").get<int>();
    m.r2 = j.at("r2").get<int>();
    m.discriminant = j.at("discriminant").get<long>();
    m.residue_H = j.at("residue_H").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::FormatError, std::string("metadata field missing or mistyped: ") + e.what());
  }
  return m;
}

NumberField field_from_table(VkTable table, const FieldMetadata& meta) {
  if (meta.degree < 1 || meta.r1 < 0 || meta.r2 < 0 || meta.degree != meta.r1 + 2 * meta.r2)
    fail(ErrorKind::FormatError, "metadata signature must satisfy degree = r1 + 2 r2");
  if (meta.discriminant == 0) fail(ErrorKind::FormatError, "discriminant must be nonzero");
  {
    WorkingPrecision wp(64);
    Real h(std::string_view(meta.residue_H));
    if (!(h.sign() > 0)) fail(ErrorKind::FormatError, "residue_H must be positive");
  }
  validate_vk_table(table);
  NumberField f;
  f.degree = meta.degree;
  f.r1 = meta.r1;
  f.r2 = meta.r2;
  f.discriminant = meta.discriminant;
  f.abs_discriminant = std::labs(meta.discriminant);
  f.source = CoefficientSource::Table;
  f.table = std::make_shared<const VkTable>(std::move(table));
  f.residue_decimal = meta.residue_H;
  return f;
}

NumberField load_vk_table(const std::filesystem::path& csv, const std::filesystem::path& metadata) {
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  return field_from_table(parse_vk_csv(slurp(csv)), parse_field_metadata(slurp(metadata)));
}

}  // namespace nfv
