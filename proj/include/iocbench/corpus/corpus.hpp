#pragma once

#include "iocbench/jsource/parser.hpp"
#include "iocbench/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace iocbench::corpus {

struct CodeStats {
    std::uint64_t loc = 0;
    std::uint64_t function_count = 0;
    /// Mean McCabe number over functions; the whole program counts as one
    /// unit when it has no functions.
    Rational cyclomatic_complexity{1};

    bool operator==(const CodeStats&) const = default;
};

/// Lines that hold at least one token other than whitespace or a comment.
std::uint64_t count_loc(const std::vector<js::Token>& tokens, std::string_view text);

/// 1 + decision points (if, ?:, for/for-in/for-of/while/do, &&, ||,
/// non-default case) of fn's own body, nested functions excluded.
std::uint64_t mccabe(const js::Node& fn);

CodeStats compute_code_stats(const js::SourceUnit& unit);

struct CorpusEntry {
    std::string file_id;
    /// Relative to the corpus root, '/'-separated.
    std::string path;
    std::string category;
    CodeStats stats;

    bool operator==(const CorpusEntry&) const = default;
};

struct CorpusManifest {
    std::vector<CorpusEntry> entries;
    std::uint64_t master_seed = 0;

    bool operator==(const CorpusManifest&) const = default;
};

struct SelectionCriteria {
    std::uint64_t min_loc = 1;
    std::uint64_t max_loc = std::numeric_limits<std::uint64_t>::max();
    std::optional<std::size_t> max_per_category;
};

struct Rejection {
    std::string path;
    /// LEX_ERROR, PARSE_ERROR, PARSE_UNSUPPORTED, SCOPE_ERROR, IO_ERROR,
    /// EXTERNAL_DEPENDENCY, LOC_OUT_OF_BOUNDS or CATEGORY_CAP.
    std::string reason;
    std::string detail;
};

struct IngestResult {
    CorpusManifest manifest;
    std::vector<Rejection> rejections;
};

/// "sorting/bubble_sort.js" -> "sorting__bubble_sort".
std::string file_id_for(const std::string& relative_path);

/// First directory under the root, or "uncategorized".
std::string category_for(const std::string& relative_path);

/// True when the tokens import or require another module.
bool has_external_dependency(const std::vector<js::Token>& tokens);

/// Throws Error(IoError) when root is unreadable and Error(EmptyCorpus)
/// when nothing survives filtering. Entries are sorted by path.
IngestResult ingest_corpus(const std::filesystem::path& root, const SelectionCriteria& criteria,
                           std::uint64_t master_seed);

nlohmann::json manifest_to_json(const CorpusManifest& m);
/// Throws Error(SchemaError).
CorpusManifest manifest_from_json(const nlohmann::json& j);

struct CorpusSummary {
    std::size_t file_count = 0;
    Rational avg_loc{0};
    std::uint64_t min_loc = 0;
    std::uint64_t max_loc = 0;
    Rational avg_functions{0};
    Rational avg_cyclomatic_complexity{0};

    bool operator==(const CorpusSummary&) const = default;
};

/// Requires a non-empty manifest.
CorpusSummary summarize_corpus(const CorpusManifest& manifest);

/// Two-column table: metric, value.
std::string render_summary(const CorpusSummary& s, const std::string& title);

}  // namespace iocbench::corpus
