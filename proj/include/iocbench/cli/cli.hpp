#pragma once

#include "iocbench/corpus/corpus.hpp"
#include "iocbench/scoring/report.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace iocbench::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kFailed = 2,
    kIo = 3,
    kAuthOrRetries = 4,
};

struct RunConfig {
    std::optional<std::filesystem::path> corpus;
    std::optional<std::uint64_t> master_seed;
    std::filesystem::path out = "out";
    std::optional<std::filesystem::path> providers;
    std::string campaign = "default";
    /// Built-in mock names or script paths.
    std::vector<std::string> mocks;
    std::optional<std::string> runtime_cmd;
    std::set<scoring::ReportFormat> formats{scoring::ReportFormat::Csv, scoring::ReportFormat::Markdown};
};

std::filesystem::path dataset_dir(const RunConfig& c);
std::filesystem::path campaign_log(const RunConfig& c);
std::filesystem::path report_dir(const RunConfig& c);

int cmd_generate(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_score(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Per-phase and overall code metrics of a generated dataset.
struct DatasetSummary {
    corpus::CorpusSummary overall;
    std::vector<std::pair<std::string, corpus::CorpusSummary>> per_phase;
};

DatasetSummary summarize_dataset(const std::filesystem::path& dataset_dir);

/// Parses argv (program name first) and dispatches to a subcommand.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iocbench::cli
