#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "contrastfix/eval.hpp"

namespace contrastfix {

enum class ReportFormat { kJson, kCsv, kText };

std::optional<ReportFormat> report_format_from_string(std::string_view name);

/// Serializes one or more reports (one per mode).
///   json: a single object for one report, an array otherwise. Field order is fixed.
///   csv:  header plus one row per (report, category).
///   text: side-by-side tables, one column per report.
std::string write_report(std::span<const BenchmarkReport> reports, ReportFormat format);
std::string write_report(const BenchmarkReport& report, ReportFormat format);

/// Inverse of the JSON form for a single report. Throws std::runtime_error on bad input.
BenchmarkReport parse_report_json(std::string_view json);

}  // namespace contrastfix
