#pragma once

// JSON and CSV serialization of verification reports.
// Multiprecision values are decimal strings exact enough to round-trip at the report's precision.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nfv/identities.hpp"

namespace nfv {

enum class ReportFormat { Json, Csv };

// Significant digits for a precision: at least ceil(bits / 3.32) and enough to round-trip.
[[nodiscard]] int report_digits(long precision_bits);
[[nodiscard]] std::string decimal_string(const Real& x, long precision_bits);

// One report renders as a JSON object, several as an array. CSV has a header row and one row per report.
[[nodiscard]] std::string format_reports(std::span<const VerificationReport> reports, ReportFormat format);
// Inverse of format_reports; FormatError on malformed input.
[[nodiscard]] std::vector<VerificationReport> parse_reports(const std::string& text, ReportFormat format);

// Writes to path, or to stdout when path is empty or "-". IoError on failure.
void write_text(const std::string& text, const std::filesystem::path& path);
void emit_report(const VerificationReport& report, ReportFormat format, const std::filesystem::path& path);
void emit_reports(std::span<const VerificationReport> reports, ReportFormat format, const std::filesystem::path& path);

// Minimal RFC 4180 helpers shared with other CSV emitters.
[[nodiscard]] std::string csv_escape(const std::string& cell);
[[nodiscard]] std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace nfv
