#include "nfv/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include <json.hpp>

#include "nfv/errors.hpp"

namespace nfv {

namespace {

using Json = nlohmann::ordered_json;

Real rounded_to(const Real& x, long bits) {
  WorkingPrecision wp(bits);
  Real r;
  mpfr_set(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real parse_real(const std::string& s, long bits) {
  WorkingPrecision wp(bits);
  return Real(std::string_view(s));
}

Json complex_json(const Complex& z, long bits) {
  return Json{{"re", decimal_string(z.re, bits)}, {"im", decimal_string(z.im, bits)}};
}

const Json& member(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorKind::FormatError, std::string("report is missing key '") + key + "'");
  return *it;
}

Complex complex_from_json(const Json& j, long bits) {
  return {parse_real(member(j, "re").get<std::string>(), bits), parse_real(member(j, "im").get<std::string>(), bits)};
}

Json report_json(const VerificationReport& r) {
  const long p = r.precision_bits;
  Json params = Json::object();
  for (const auto& [name, value] : r.params) params[name] = complex_json(value, p);
  Json j{
      {"identity", r.identity},
      {"field",
       {{"degree", r.field.degree}, {"r1", r.field.r1}, {"r2", r.field.r2}, {"discriminant", r.field.discriminant}}},
      {"params", params},
      {"lhs", complex_json(r.lhs, p)},
      {"rhs", complex_json(r.rhs, p)},
      {"abs_err", decimal_string(r.abs_err, p)},
      {"rel_err", decimal_string(r.rel_err, p)},
      {"terms_used", r.terms_used},
      {"continuation_m", r.continuation_m ? Json(*r.continuation_m) : Json(nullptr)},
      {"precision_bits", p},
      {"strategy", r.strategy},
      {"elapsed_ms", r.elapsed_ms},
  };
  if (r.error) j["error"] = *r.error;
  return j;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.identity = member(j, "identity").get<std::string>();
  const auto& f = member(j, "field");
  r.field = {member(f, "degree").get<int>(), member(f, "r1").get<int>(), member(f, "r2").get<int>(),
             member(f, "discriminant").get<long>()};
  r.precision_bits = member(j, "precision_bits").get<long>();
  const long p = r.precision_bits;
  for (const auto& [name, value] : member(j, "params").items()) r.params.emplace_back(name, complex_from_json(value, p));
  r.lhs = complex_from_json(member(j, "lhs"), p);
  r.rhs = complex_from_json(member(j, "rhs"), p);
  r.abs_err = parse_real(member(j, "abs_err").get<std::string>(), p);
  r.rel_err = parse_real(member(j, "rel_err").get<std::string>(), p);
  r.terms_used = member(j, "terms_used").get<long>();
  const auto& m = member(j, "continuation_m");
  if (!m.is_null()) r.continuation_m = m.get<long>();
  r.strategy = member(j, "strategy").get<std::string>();
  r.elapsed_ms = member(j, "elapsed_ms").get<double>();
  if (auto it = j.find("error"); it != j.end()) r.error = it->get<std::string>();
  return r;
}

std::string format_json(std::span<const VerificationReport> reports) {
  if (reports.size() == 1) return report_json(reports.front()).dump(2) + "\n";
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2) + "\n";
}

// Parameter names in order of first appearance across the batch.
std::vector<std::string> param_names(std::span<const VerificationReport> reports) {
  std::vector<std::string> names;
  for (const auto& r : reports)
    for (const auto& [name, value] : r.params)
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  return names;
}

std::string elapsed_text(double ms) { return Json(ms).dump(); }

std::string format_csv(std::span<const VerificationReport> reports) {
  const auto names = param_names(reports);
  const bool any_error = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.error.has_value(); });
  std::vector<std::string> header{"identity", "field.degree", "field.r1", "field.r2", "field.discriminant"};
  for (const auto& n : names) {
    header.push_back("params." + n + ".re");
    header.push_back("params." + n + ".im");
  }
  for (const char* h : {"lhs.re", "lhs.im", "rhs.re", "rhs.im", "abs_err", "rel_err", "terms_used", "continuation_m",
                        "precision_bits", "strategy", "elapsed_ms"})
    header.emplace_back(h);
  if (any_error) header.emplace_back("error");

  std::string out;
  auto emit_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_escape(cells[i]);
    out += "\n";
  };
  emit_row(header);
  for (const auto& r : reports) {
    const long p = r.precision_bits;
    std::vector<std::string> row{r.identity, std::to_string(r.field.degree), std::to_string(r.field.r1),
                                 std::to_string(r.field.r2), std::to_string(r.field.discriminant)};
    for (const auto& n : names) {
      auto it = std::find_if(r.params.begin(), r.params.end(), [&](const auto& kv) { return kv.first == n; });
      row.push_back(it == r.params.end() ? "" : decimal_string(it->second.re, p));
      row.push_back(it == r.params.end() ? "" : decimal_string(it->second.im, p));
    }
    for (const Real* v : {&r.lhs.re, &r.lhs.im, &r.rhs.re, &r.rhs.im, &r.abs_err, &r.rel_err})
      row.push_back(decimal_string(*v, p));
    row.push_back(std::to_string(r.terms_used));
    row.push_back(r.continuation_m ? std::to_string(*r.continuation_m) : "");
    row.push_back(std::to_string(p));
    row.push_back(r.strategy);
    row.push_back(elapsed_text(r.elapsed_ms));
    if (any_error) row.push_back(r.error.value_or(""));
    emit_row(row);
  }
  return out;
}

long to_long_cell(const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::FormatError, "not an integer: '" + s + "'");
}

std::vector<VerificationReport> parse_csv_reports(const std::string& text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) fail(ErrorKind::FormatError, "empty report CSV");
  const auto& header = rows.front();
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  std::vector<std::string> names;
  for (const auto& h : header)
    if (h.starts_with("params.") && h.ends_with(".re")) names.push_back(h.substr(7, h.size() - 10));

  std::vector<VerificationReport> out;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& row = rows[k];
    if (row.size() != header.size()) fail(ErrorKind::FormatError, "CSV row " + std::to_string(k) + " has wrong width");
    auto cell = [&](const std::string& name) -> const std::string& {
      auto it = col.find(name);
      if (it == col.end()) fail(ErrorKind::FormatError, "report CSV is missing column '" + name + "'");
      return row[it->second];
    };
    VerificationReport r;
    r.identity = cell("identity");
    r.field = {static_cast<int>(to_long_cell(cell("field.degree"))), static_cast<int>(to_long_cell(cell("field.r1"))),
               static_cast<int>(to_long_cell(cell("field.r2"))), to_long_cell(cell("field.discriminant"))};
    r.precision_bits = to_long_cell(cell("precision_bits"));
    const long p = r.precision_bits;
    for (const auto& n : names) {
      const auto& re = cell("params." + n + ".re");
      if (re.empty()) continue;
      r.params.emplace_back(n, Complex(parse_real(re, p), parse_real(cell("params." + n + ".im"), p)));
    }
    r.lhs = {parse_real(cell("lhs.re"), p), parse_real(cell("lhs.im"), p)};
    r.rhs = {parse_real(cell("rhs.re"), p), parse_real(cell("rhs.im"), p)};
    r.abs_err = parse_real(cell("abs_err"), p);
    r.rel_err = parse_real(cell("rel_err"), p);
    r.terms_used = to_long_cell(cell("terms_used"));
    if (const auto& m = cell("continuation_m"); !m.empty()) r.continuation_m = to_long_cell(m);
    r.strategy = cell("strategy");
    r.elapsed_ms = Json::parse(cell("elapsed_ms")).get<double>();
    if (col.contains("error") && !cell("error").empty()) r.error = cell("error");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

int report_digits(long precision_bits) {
  const double p = static_cast<double>(precision_bits);
  const int nominal = static_cast<int>(std::ceil(p / 3.32));
  const int exact = 1 + static_cast<int>(std::ceil(p * std::log10(2.0)));
  return std::max(nominal, exact);
}

std::string decimal_string(const Real& x, long precision_bits) {
  return rounded_to(x, precision_bits).to_string(report_digits(precision_bits));
}

std::string format_reports(std::span<const VerificationReport> reports, ReportFormat format) {
  return format == ReportFormat::Json ? format_json(reports) : format_csv(reports);
}

std::vector<VerificationReport> parse_reports(const std::string& text, ReportFormat format) {
  if (format == ReportFormat::Csv) return parse_csv_reports(text);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorKind::FormatError, std::string("invalid report JSON: ") + e.what());
  }
  std::vector<VerificationReport> out;
  try {
    if (j.is_array())
      for (const auto& item : j) out.push_back(report_from_json(item));
    else
      out.push_back(report_from_json(j));
  } catch (const Json::exception& e) {
    fail(ErrorKind::FormatError, std::string("malformed report: ") + e.what());
  }
  return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) fail(ErrorKind::IoError, "cannot write to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  f << text;
  f.close();
  if (!f) fail(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

void emit_report(const VerificationReport& report, ReportFormat format, const std::filesystem::path& path) {
  emit_reports(std::span(&report, 1), format, path);
}

void emit_reports(std::span<const VerificationReport> reports, ReportFormat format, const std::filesystem::path& path) {
  write_text(format_reports(reports, format), path);
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
      continue;
    }
    row_open = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
    } else {
      cell += c;
    }
  }
  if (quoted) fail(ErrorKind::FormatError, "unterminated quoted CSV cell");
  if (row_open) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nfv
