#pragma once

#include "iocbench/corpus/corpus.hpp"
#include "iocbench/groundtruth/record.hpp"
#include "iocbench/ioc/ioc.hpp"
#include "iocbench/jsource/parser.hpp"
#include "iocbench/transforms/phase.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iocbench::transforms {

struct Variant {
    std::string file_id;
    TransformPhase phase;
    std::string text;
    groundtruth::VariantRecord record;
};

/// The indicator for one file, shared by all of its phases. Redrawn while
/// its dotted quad already occurs in the original text.
ioc::Ioc choose_file_ioc(std::uint64_t master_seed, const std::string& file_id, std::string_view original_text,
                         const ioc::Cidr& range = ioc::Cidr::parse(ioc::kDefaultRange));

/// embed -> dead code -> structural -> rename, then emit and re-parse.
/// Errors from any step propagate.
Variant apply_phase(const js::SourceUnit& unit, const std::string& file_id, const std::string& original_filename,
                    const TransformPhase& phase, const ioc::Ioc& ioc, std::uint64_t seed);

struct GenerateOptions {
    ioc::Cidr range = ioc::Cidr::parse(ioc::kDefaultRange);
    /// Command used for behavioral checks ("node"); none skips them.
    std::optional<std::string> runtime_command;
};

struct AbortedVariant {
    std::string variant_id;
    std::string reason;
};

struct GenerateReport {
    std::uint64_t variant_count = 0;
    std::vector<AbortedVariant> aborted;
    /// Checks with a fail verdict.
    std::uint64_t verification_failures = 0;
    std::uint64_t behavioral_passes = 0;
    std::uint64_t behavioral_skips = 0;
    /// Count of P0 insertion kinds.
    std::map<std::string, std::uint64_t> location_distribution;
    /// Indicators used by more than one file, with their file ids.
    std::map<std::string, std::vector<std::string>> ioc_collisions;
};

/// "<file_id>.P<n>".
std::string variant_id(const std::string& file_id, const TransformPhase& phase);

/// Writes <out>/dataset/P<n>/<file_id>.js, <out>/dataset/records/<file_id>.P<n>.json,
/// <out>/dataset/index.json and <out>/verification.jsonl. Output depends only
/// on the manifest, the corpus files and master_seed.
GenerateReport generate_all(const corpus::CorpusManifest& manifest, const std::filesystem::path& corpus_root,
                            std::uint64_t master_seed, const std::filesystem::path& out_dir,
                            const GenerateOptions& options = {});

}  // namespace iocbench::transforms
