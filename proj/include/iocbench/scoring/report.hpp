#pragma once

#include "iocbench/scoring/score.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace iocbench::scoring {

enum class ReportFormat { Csv, Markdown, Json };

/// "csv", "markdown" or "json"; throws Error(ConfigError) otherwise.
ReportFormat report_format_from_string(std::string_view s);

struct Report {
    std::vector<PhaseMetrics> by_model;
    std::vector<PhaseMetrics> by_model_phase;
    std::vector<HallucinationRecord> hallucinations;
};

Report build_report(const std::vector<Outcome>& outcomes);

/// File name to content. csv: summary.csv, phase_matrix.csv and
/// hallucinations.csv; markdown: report.md; json: report.json with exact
/// rationals.
std::map<std::string, std::string> render_report(const Report& report, const std::set<ReportFormat>& formats);

/// Writes render_report output under dir. Throws Error(IoError).
void write_report(const Report& report, const std::filesystem::path& dir, const std::set<ReportFormat>& formats);

}  // namespace iocbench::scoring
