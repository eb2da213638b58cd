#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "nfv/report.hpp"
#include "support.hpp"

using namespace nfv;

namespace {

VerificationReport sample(long bits) {
  WorkingPrecision wp(bits);
  VerificationReport r;
  r.identity = "lambert";
  r.field = {2, 0, 1, -4};
  r.params = {{"a", Complex(Real(std::string_view("0.25")), Real(0L))},
              {"y", Complex(Real(1L), Real(std::string_view("-0.125")))}};
  r.precision_bits = bits;
  r.lhs = Complex(const_pi() / Real(3L), Real(std::string_view("1e-40")));
  r.rhs = Complex(const_pi() / Real(3L) + ldexp(Real(1L), -bits / 2), Real(0L));
  r.finalize_errors();
  r.terms_used = 67;
  r.continuation_m = 2;
  r.strategy = "head n<=67, \"quoted\"; tail by expansion\nsecond line";
  return r;
}

void check_same(const VerificationReport& a, const VerificationReport& b) {
  CHECK(a.identity == b.identity);
  CHECK(a.field == b.field);
  REQUIRE(a.params.size() == b.params.size());
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    CHECK(a.params[i].first == b.params[i].first);
    CHECK(a.params[i].second == b.params[i].second);
  }
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.abs_err == b.abs_err);
  CHECK(a.rel_err == b.rel_err);
  CHECK(a.terms_used == b.terms_used);
  CHECK(a.continuation_m == b.continuation_m);
  CHECK(a.precision_bits == b.precision_bits);
  CHECK(a.strategy == b.strategy);
  CHECK(a.elapsed_ms == b.elapsed_ms);
  CHECK(a.error == b.error);
}

std::size_t significant_digits(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) {
    if (c == 'e') break;
    if (c >= '0' && c <= '9') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("decimal strings carry enough digits") {
  CHECK(report_digits(256) >= 77);
  CHECK(report_digits(53) >= 17);
  WorkingPrecision wp(256);
  CHECK(significant_digits(decimal_string(const_pi(), 256)) >= 77);
  // Round trip at the stated precision is exact.
  for (long bits : {64L, 128L, 256L, 1000L}) {
    WorkingPrecision w(bits);
    Real x = const_pi() / Real(7L);
    WorkingPrecision parse(bits);
    CHECK(Real(std::string_view(decimal_string(x, bits))) == x);
  }
}

TEST_CASE("JSON report has the documented keys and round-trips") {
  const auto r = sample(256);
  const std::string text = format_reports(std::span(&r, 1), ReportFormat::Json);
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"identity", "field", "params", "lhs", "rhs", "abs_err", "rel_err", "terms_used",
                                         "continuation_m", "precision_bits", "strategy", "elapsed_ms"});
  CHECK(j["field"]["discriminant"] == -4);
  CHECK(j["lhs"].contains("re"));
  CHECK(j["lhs"].contains("im"));
  const auto back = parse_reports(text, ReportFormat::Json);
  REQUIRE(back.size() == 1);
  check_same(back[0], r);
  CHECK(format_reports(back, ReportFormat::Json) == text);
}

TEST_CASE("CSV report round-trips and matches the JSON strings") {
  std::vector<VerificationReport> rs{sample(256), sample(128)};
  rs[1].continuation_m.reset();
  rs[1].error = "NoConvergence: example";
  const std::string csv = format_reports(rs, ReportFormat::Csv);
  CHECK(csv.starts_with("identity,field.degree,field.r1,field.r2,field.discriminant,params.a.re"));
  const auto back = parse_reports(csv, ReportFormat::Csv);
  REQUIRE(back.size() == 2);
  check_same(back[0], rs[0]);
  check_same(back[1], rs[1]);
  CHECK(format_reports(back, ReportFormat::Csv) == csv);

  // Every decimal string in the JSON rendering appears verbatim in the CSV rendering.
  const auto j = nlohmann::ordered_json::parse(format_reports(std::span(rs.data(), 1), ReportFormat::Json));
  const auto rows = parse_csv(csv);
  auto has = [&](const std::string& s) { return std::find(rows[1].begin(), rows[1].end(), s) != rows[1].end(); };
  for (const char* key : {"lhs", "rhs"}) {
    CHECK(has(j[key]["re"].get<std::string>()));
    CHECK(has(j[key]["im"].get<std::string>()));
  }
  CHECK(has(j["abs_err"].get<std::string>()));
  CHECK(has(j["rel_err"].get<std::string>()));
  CHECK(has(j["params"]["y"]["im"].get<std::string>()));
}

TEST_CASE("report errors") {
  CHECK(nfv::test::kind_of([] { (void)parse_reports("{", ReportFormat::Json); }) == ErrorKind::FormatError);
  CHECK(nfv::test::kind_of([] { (void)parse_reports("{\"identity\":\"x\"}", ReportFormat::Json); }) ==
        ErrorKind::FormatError);
  CHECK(nfv::test::kind_of([] { (void)parse_csv("a,\"b"); }) == ErrorKind::FormatError);
  const auto r = sample(64);
  bool io_error = false;
  try {
    emit_report(r, ReportFormat::Json, "/nonexistent-dir/report.json");
  } catch (const Error& e) {
    io_error = e.kind() == ErrorKind::IoError;
  }
  CHECK(io_error);

  const auto path = std::filesystem::temp_directory_path() / "nfv_report_test.csv";
  emit_report(r, ReportFormat::Csv, path);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  check_same(parse_reports(ss.str(), ReportFormat::Csv).at(0), r);
  std::filesystem::remove(path);
}
