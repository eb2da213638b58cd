// Persistent on-disk cache of v_K tables for built-in fields.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "nfv/errors.hpp"
#include "nfv/fields.hpp"

namespace nfv {

namespace {

// Tables this small are cheaper to sieve than to read back.
constexpr long kCacheThreshold = 100'000;

std::optional<VkTable> read_cached(const std::filesystem::path& file, long max_norm) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    VkTable t = parse_vk_csv(ss.str());
    if (t.max_norm != max_norm || t.counts[1] != 1) return std::nullopt;
    return t;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void write_atomically(const std::filesystem::path& file, const std::string& content) {
  static std::atomic<unsigned long> counter{0};
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) return;
  std::ostringstream name;
  name << file.filename().string() << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id())
       << "." << counter.fetch_add(1);
  auto tmp = file.parent_path() / name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << content;
    if (!out.flush()) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

std::filesystem::path cache_directory() {
  if (const char* env = std::getenv("VORONOI_NF_CACHE"); env != nullptr && *env != '\0') return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0')
    return std::filesystem::path(xdg) / "voronoi_nf";
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0')
    return std::filesystem::path(home) / ".cache" / "voronoi_nf";
  return std::filesystem::temp_directory_path() / "voronoi_nf";
}

VkTable cached_vk_table(long delta, long max_norm) {
  NumberField field = field_from_discriminant(delta);
  if (max_norm < kCacheThreshold) return vk_table(field, max_norm);
  auto file = cache_directory() / ("vk_" + std::to_string(delta) + "_" + std::to_string(max_norm) + ".csv");
  if (auto hit = read_cached(file, max_norm)) return std::move(*hit);
  VkTable t = vk_table(field, max_norm);
  write_atomically(file, format_vk_csv(t));
  return t;
}

}  // namespace nfv
