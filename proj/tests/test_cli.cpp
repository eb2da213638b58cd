#include <filesystem>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "nfv/cli.hpp"
#include "nfv/report.hpp"
#include "support.hpp"

using namespace nfv;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("field info") {
  const auto r = invoke({"field", "info", "--disc", "1"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["degree"] == 1);
  CHECK(j["r1"] == 1);
  CHECK(j["r2"] == 0);
  CHECK(j["H"] == "1");
  const auto csv = invoke({"--format", "csv", "field", "info", "--disc", "-4"});
  CHECK(csv.code == 0);
  CHECK(csv.out.starts_with("label,degree,r1,r2,discriminant,H,source\n"));
}

TEST_CASE("verify lambert exit codes") {
  const auto ok = invoke({"verify", "lambert", "--disc", "-4", "--a", "0.25", "--y", "1", "--tol", "1e-6", "--prec", "128"});
  REQUIRE(ok.code == 0);
  const auto j = Json::parse(ok.out);
  CHECK(j["identity"] == "lambert");
  CHECK(std::stod(j["rel_err"].get<std::string>()) <= 1e-6);
  CHECK(j["elapsed_ms"] == 0.0);

  const auto singular = invoke({"verify", "lambert", "--disc", "-4", "--a", "0", "--y", "1"});
  CHECK(singular.code == 2);
  CHECK(singular.out.empty());
  CHECK(singular.err.find("SingularParameter") != std::string::npos);

  // Exceeding the tolerance still writes the report.
  const auto strict =
      invoke({"verify", "lambert", "--disc", "1", "--a", "0.5", "--y", "1", "--prec", "64", "--tol", "1e-300"});
  CHECK(strict.code == 1);
  CHECK(Json::parse(strict.out)["identity"] == "lambert");

  const auto continued = invoke({"verify", "lambert", "--disc", "-4", "--a", "-1.5", "--y", "1", "--continued", "1",
                              "--prec", "128"});
  CHECK(continued.code == 0);
  CHECK(Json::parse(continued.out)["continuation_m"] == 1);
}

TEST_CASE("usage errors exit 2 without output") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"field", "info"},
           {"field", "info", "--disc", "3"},
           {"field", "info", "--disc", "x"},
           {"field", "info", "--disc", "1", "--prec", "10"},
           {"field", "info", "--disc", "1", "--format", "xml"},
           {"field", "info", "--disc", "1", "--bogus"},
           {"verify", "lambert", "--disc", "1", "--a", "abc", "--y", "1"},
           {"verify", "lambert", "--disc", "1", "--a", "0.5", "--y", "-1"},
           {"verify", "lambert", "--disc", "1", "--a", "0.5", "--y", "1", "--tol", "-1"},
           {"verify", "lambert", "--disc", "1", "--a", "0.5", "--y", "1", "--jobs", "0"},
           {"verify", "voronoi", "--disc", "1", "--a", "0.1", "--probe", "sinc:1"},
           {"verify", "voronoi", "--disc", "1", "--a", "0.1", "--probe", "gauss:-1"},
           {"verify", "koshliakov", "--disc", "1", "--mu", "-0.7", "--nu", "0.25", "--x", "1"},
           {"verify", "asymptotic", "--disc", "-4", "--a", "0.3", "--y", "1", "--m", "0", "--n-list", "10"},
           {"sigma", "--disc", "1", "--a", "1", "--n-range", "5..2"},
           {"verify"},
       }) {
    const auto r = invoke(args);
    CHECK_MESSAGE(r.code == 2, (args.front() + " " + args.back()));
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
  }
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("evaluation commands") {
  const auto cache = std::filesystem::temp_directory_path() / "nfv_cli_cache";
  const auto vk = invoke({"vk", "--disc", "-4", "--max", "10", "--cache-dir", cache.string()});
  REQUIRE(vk.code == 0);
  CHECK(vk.out == "norm,count\n1,1\n2,1\n3,0\n4,1\n5,2\n6,0\n7,0\n8,1\n9,1\n10,2\n");
  std::filesystem::remove_all(cache);

  const auto sigma = invoke({"--format", "csv", "sigma", "--disc", "1", "--a", "1", "--n-range", "1..6", "--prec", "64"});
  REQUIRE(sigma.code == 0);
  const auto rows = parse_csv(sigma.out);
  REQUIRE(rows.size() == 7);
  std::vector<std::string> values;
  for (std::size_t i = 1; i < rows.size(); ++i) values.push_back(rows[i][3]);
  CHECK(values == std::vector<std::string>{"1", "3", "4", "7", "6", "1.2e1"});

  const auto zeta = invoke({"zeta", "--disc", "1", "--s", "2", "--prec", "64"});
  REQUIRE(zeta.code == 0);
  CHECK(Json::parse(zeta.out)["re"].get<std::string>().starts_with("1.644934066848226436"));

  const auto kernel = invoke({"kernel", "--disc", "1", "--nu", "0.25", "--x", "1", "--prec", "128"});
  REQUIRE(kernel.code == 0);
  const auto k = Json::parse(kernel.out);
  CHECK(k["re"].get<std::string>().substr(0, 30) == k["closed_form.re"].get<std::string>().substr(0, 30));

  // Pole of zeta: a computational error, rendered as a structured entry.
  const auto pole = invoke({"zeta", "--disc", "1", "--s", "1", "--prec", "64"});
  CHECK(pole.code == 1);
  CHECK(Json::parse(pole.out).contains("error"));
}

TEST_CASE("sweeps are deterministic across job counts") {
  const std::vector<std::string> base{"verify", "lambert", "--disc", "5", "--a", "0.25", "--a", "0.5",
                                      "--y", "1", "--y", "2", "--prec", "96", "--format", "csv"};
  auto with_jobs = [&](const char* jobs) {
    auto args = base;
    args.insert(args.end(), {"--jobs", jobs});
    return invoke(args);
  };
  const auto one = with_jobs("1");
  const auto eight = with_jobs("8");
  REQUIRE(one.code == 0);
  CHECK(one.out == eight.out);
  CHECK(parse_reports(one.out, ReportFormat::Csv).size() == 4);
  CHECK(invoke(base).out == one.out);
}

TEST_CASE("output file and I/O failure") {
  const auto path = std::filesystem::temp_directory_path() / "nfv_cli_out.json";
  const auto r = invoke({"field", "info", "--disc", "5", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
  const auto bad = invoke({"field", "info", "--disc", "5", "--out", "/nonexistent-dir/x.json"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("IoError") != std::string::npos);
}
