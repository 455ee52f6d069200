#pragma once

#include "iocbench/groundtruth/record.hpp"
#include "iocbench/harness/client.hpp"
#include "iocbench/harness/prompt.hpp"

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace iocbench::harness {

struct DatasetVariant {
    std::string variant_id;
    std::string file_id;
    std::string phase;
    std::string text;
    groundtruth::VariantRecord record;
};

/// Reads <dataset>/index.json and every listed variant and record. Throws
/// Error(SchemaError) when a file's digest disagrees with its record or the
/// index, Error(IoError) when a file is missing.
std::vector<DatasetVariant> load_dataset(const std::filesystem::path& dataset_dir);

/// (variant content digest, model name, model version).
using ResumeKey = std::tuple<std::string, std::string, std::string>;

ResumeKey resume_key(const RawResponse& r);

/// Parses a campaign log. A final line without a newline (an interrupted
/// write) is ignored; any other malformed line throws Error(SchemaError).
std::vector<RawResponse> read_campaign_log(const std::filesystem::path& log_path);

struct CampaignOptions {
    PromptSpec prompt;
    /// Stop after this many new queries, as if interrupted.
    std::optional<std::size_t> stop_after;
};

struct CampaignSummary {
    std::size_t pairs = 0;
    std::size_t already_logged = 0;
    std::size_t queried = 0;
    std::size_t exhausted = 0;
    std::size_t http_errors = 0;
    bool interrupted = false;
};

/// One query per (variant, client) pair not yet in the log, appended to
/// log_path as JSON lines. Each client gets its own pool of
/// config().concurrency workers. Credentials are checked for every client
/// before any query; Error(AuthError) propagates after in-flight work ends.
CampaignSummary run_campaign(const std::filesystem::path& dataset_dir,
                             const std::vector<std::shared_ptr<ModelClient>>& clients,
                             const std::filesystem::path& log_path, const CampaignOptions& options = {});

}  // namespace iocbench::harness
