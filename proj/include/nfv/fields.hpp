#pragma once

// Number fields described by signature, discriminant and their ideal-norm counts v_K(m).
// Built-in fields are Q and quadratic fields (via the Kronecker character);
// other fields enter through a v_K table plus metadata.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nfv/mp.hpp"
#include "nfv/precision.hpp"

namespace nfv {

enum class CoefficientSource { Rational, QuadraticCharacter, Table };

// counts[m] = v_K(m) for 1 <= m <= max_norm; counts[0] is unused and zero.
struct VkTable {
  long max_norm = 0;
  std::vector<long> counts;

  [[nodiscard]] long at(long m) const;  // OutOfTableRange beyond max_norm
};

struct FieldMetadata {
  int degree = 0;
  int r1 = 0;
  int r2 = 0;
  long discriminant = 0;
  std::string residue_H;  // decimal string
};

class NumberField {
 public:
  int degree = 1;
  int r1 = 1;
  int r2 = 0;
  long discriminant = 1;
  long abs_discriminant = 1;
  CoefficientSource source = CoefficientSource::Rational;
  std::shared_ptr<const VkTable> table;  // Table source only
  std::string residue_decimal;           // Table source only

  // Residue of the Dedekind zeta function at s = 1, at ctx precision.
  [[nodiscard]] Real residue_H(const PrecisionContext& ctx = {}) const;
  // Analytic continuation of zeta_K is available (Q and quadratic fields).
  [[nodiscard]] bool has_continuation() const noexcept { return source != CoefficientSource::Table; }
  [[nodiscard]] std::string label() const;
};

[[nodiscard]] bool is_fundamental_discriminant(long delta);
// delta = 1 gives Q; otherwise delta must be a fundamental discriminant (NotFundamental).
[[nodiscard]] NumberField field_from_discriminant(long delta);
[[nodiscard]] int kronecker_symbol(long delta, long n);

[[nodiscard]] long ideal_count_vk(const NumberField& field, long m);
// v_K(1..max_norm) in one sieve pass.
[[nodiscard]] VkTable vk_table(const NumberField& field, long max_norm);

[[nodiscard]] Complex divisor_sigma(const NumberField& field, const Complex& a, long n, const PrecisionContext& ctx = {});
// sigma_{K,a}(1..n_max) at the current working precision; index 0 unused.
[[nodiscard]] std::vector<Complex> divisor_sigma_range(const NumberField& field, const Complex& a, long n_max);

[[nodiscard]] Complex dirichlet_L(long delta, const Complex& s, const PrecisionContext& ctx = {});
[[nodiscard]] Complex dedekind_zeta(const NumberField& field, const Complex& s, const PrecisionContext& ctx = {});

// CSV with header `norm,count` and one row per m = 1..max_norm.
[[nodiscard]] VkTable parse_vk_csv(const std::string& text);
[[nodiscard]] std::string format_vk_csv(const VkTable& table);
[[nodiscard]] FieldMetadata parse_field_metadata(const std::string& json_text);
// Validates counts[1] = 1, non-negativity and multiplicativity on up to 1000 coprime pairs.
void validate_vk_table(const VkTable& table);
[[nodiscard]] NumberField field_from_table(VkTable table, const FieldMetadata& meta);
[[nodiscard]] NumberField load_vk_table(const std::filesystem::path& csv, const std::filesystem::path& metadata);

// Persistent v_K cache: $VORONOI_NF_CACHE, else $XDG_CACHE_HOME/voronoi_nf, else ~/.cache/voronoi_nf.
[[nodiscard]] std::filesystem::path cache_directory();
// Table for a built-in field from the cache, computing and storing it (write-temp-then-rename) on a miss.
// Cache I/O failures fall back to computing in memory.
[[nodiscard]] VkTable cached_vk_table(long delta, long max_norm);

}  // namespace nfv
