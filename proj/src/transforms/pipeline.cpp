#include "iocbench/transforms/pipeline.hpp"

#include "iocbench/digest.hpp"
#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/groundtruth/verify.hpp"
#include "iocbench/jsource/emitter.hpp"
#include "iocbench/jsource/rename.hpp"
#include "iocbench/jsource/scope.hpp"
#include "iocbench/transforms/dead_code.hpp"
#include "iocbench/transforms/embed.hpp"
#include "iocbench/transforms/structural.hpp"
#include "iocbench/version.hpp"

#include "json.hpp"

#include <fstream>

namespace iocbench::transforms {

ioc::Ioc choose_file_ioc(std::uint64_t master_seed, const std::string& file_id, std::string_view original_text,
                         const ioc::Cidr& range) {
    Rng rng(derive_seed(master_seed, file_id, "ioc"));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const auto ip = ioc::generate_ioc(rng, range);
        if (original_text.find(ip.canonical()) == std::string_view::npos) return ip;
    }
    throw Error(ErrorCode::ConfigError, "every indicator drawn for " + file_id + " already occurs in its source");
}

std::string variant_id(const std::string& file_id, const TransformPhase& phase) {
    return file_id + "." + phase.name();
}

Variant apply_phase(const js::SourceUnit& unit, const std::string& file_id, const std::string& original_filename,
                    const TransformPhase& phase, const ioc::Ioc& ioc, std::uint64_t seed) {
    js::Ast ast = unit.ast;
    Rng rng(seed);
    groundtruth::VariantRecord record;
    record.original_filename = original_filename;
    record.phase = phase.name();
    record.ioc_canonical = ioc.canonical();
    record.encoding = std::string(phase.encoding());
    record.seed = seed;
    record.tool_version = kToolVersion;
    auto& params = record.params;
    params.seed = seed;

    Embedding placed;
    if (phase.has(Component::PlainInsert)) {
        placed = insert_plain_ioc(ast, ioc, rng);
    } else if (phase.has(Component::Base64)) {
        placed = encode_base64_ioc(ast, ioc, rng);
    } else {
        const bool aes = phase.has(Component::Aes);
        const auto e = embed_encrypted_ioc(ast, ioc, aes ? crypto::Scheme::Aes256Cbc : crypto::Scheme::Xor, rng);
        placed = e;
        record.key_hex = e.key_hex;
        record.ciphertext_hex = e.ciphertext_hex;
        if (aes) {
            record.iv_hex = e.iv_hex;
            params.aes_key = e.key_hex;
            params.aes_iv = e.iv_hex;
        } else {
            params.xor_key = e.key_hex;
        }
    }
    record.ioc_location = std::string(js::to_string(placed.location));
    params.insertion_point_kind = record.ioc_location;

    if (phase.has(Component::DeadCode)) {
        const auto report = inject_dead_code(ast, rng, default_dead_code_pool());
        params.dead_code = groundtruth::DeadCodeParams{report.template_ids, report.pool_version};
    }
    if (phase.has(Component::Structural)) {
        const auto s = structural_obfuscate(ast, rng, StructuralOptions{});
        params.structural = groundtruth::StructuralParams{s.string_array,  s.string_count,  s.rotation,
                                                          s.flattening,    s.flattened,     s.flatten_skips,
                                                          s.wrapper_depth, s.wrapped_functions};
    }
    if (phase.renames()) {
        const auto scopes = js::resolve_scopes(ast);
        auto renamed = js::rename_identifiers(ast, scopes, rng);
        ast = std::move(renamed.ast);
        groundtruth::RenameParams rp;
        rp.renamed = renamed.map.size();
        for (auto& e : renamed.map) rp.map.emplace_back(std::move(e.original), std::move(e.renamed));
        params.rename = std::move(rp);
    }

    Variant v;
    v.file_id = file_id;
    v.phase = phase;
    v.text = js::emit(ast);
    js::parse_source(v.text);
    record.content_digest = sha256_hex(v.text);
    groundtruth::validate_record(record);
    v.record = std::move(record);
    return v;
}

namespace {

std::string relative_to(const std::filesystem::path& p, const std::filesystem::path& base) {
    return p.lexically_relative(base).generic_string();
}

}  // namespace

GenerateReport generate_all(const corpus::CorpusManifest& manifest, const std::filesystem::path& corpus_root,
                            std::uint64_t master_seed, const std::filesystem::path& out_dir,
                            const GenerateOptions& options) {
    if (manifest.entries.empty()) throw Error(ErrorCode::EmptyCorpus, "manifest has no entries");
    const auto dataset = out_dir / "dataset";
    std::filesystem::create_directories(dataset / "records");

    GenerateReport report;
    nlohmann::json variants = nlohmann::json::array();
    std::map<std::string, std::vector<std::string>> by_ioc;
    std::string verification;

    auto log_check = [&](const std::string& id, const groundtruth::CheckResult& r) {
        verification += groundtruth::check_to_json(id, r).dump() + "\n";
        if (r.verdict == groundtruth::Verdict::Fail) ++report.verification_failures;
        if (r.check == groundtruth::CheckKind::Behavioral) {
            if (r.verdict == groundtruth::Verdict::Pass) ++report.behavioral_passes;
            if (r.verdict == groundtruth::Verdict::Skipped) ++report.behavioral_skips;
        }
    };

    for (const auto& entry : manifest.entries) {
        std::string original;
        js::SourceUnit unit;
        try {
            original = read_file(corpus_root / entry.path);
            unit = js::load_source(original);
        } catch (const Error& e) {
            for (const auto& ph : all_phases()) {
                report.aborted.push_back({variant_id(entry.file_id, ph), e.what()});
            }
            continue;
        }
        const auto ioc = choose_file_ioc(master_seed, entry.file_id, original, options.range);
        by_ioc[ioc.canonical()].push_back(entry.file_id);

        for (const auto& ph : all_phases()) {
            const std::string id = variant_id(entry.file_id, ph);
            Variant v;
            try {
                v = apply_phase(unit, entry.file_id, entry.path, ph, ioc, derive_seed(master_seed, entry.file_id, ph.name()));
            } catch (const Error& e) {
                report.aborted.push_back({id, e.what()});
                continue;
            }
            const auto js_path = dataset / ph.name() / (entry.file_id + ".js");
            const auto record_path = dataset / "records" / (id + ".json");
            write_file(js_path, v.text);
            groundtruth::write_record(v.record, record_path);
            ++report.variant_count;
            if (ph.id == 0) ++report.location_distribution[v.record.ioc_location];

            // Checks read back what was written, never the in-memory variant.
            const std::string on_disk = read_file(js_path);
            const auto record = groundtruth::read_record(record_path);
            log_check(id, groundtruth::verify_syntactic(on_disk));
            auto gt = groundtruth::verify_ground_truth(on_disk, record);
            if (sha256_hex(on_disk) != record.content_digest) {
                gt = {groundtruth::CheckKind::GroundTruth, groundtruth::Verdict::Fail, "content digest mismatch"};
            }
            log_check(id, gt);
            log_check(id, groundtruth::verify_behavioral(original, on_disk, record, options.runtime_command));

            variants.push_back({{"variant_id", id},
                                {"file_id", entry.file_id},
                                {"phase", ph.name()},
                                {"path", relative_to(js_path, dataset)},
                                {"record", relative_to(record_path, dataset)},
                                {"content_digest", record.content_digest}});
        }
    }

    for (auto& [ip, files] : by_ioc) {
        if (files.size() > 1) report.ioc_collisions.emplace(ip, files);
    }
    nlohmann::json aborted = nlohmann::json::array();
    for (const auto& a : report.aborted) aborted.push_back({{"variant_id", a.variant_id}, {"reason", a.reason}});
    const nlohmann::json index = {{"tool_version", kToolVersion},
                                  {"master_seed", master_seed},
                                  {"variant_count", report.variant_count},
                                  {"variants", std::move(variants)},
                                  {"location_distribution", report.location_distribution},
                                  {"ioc_collisions", report.ioc_collisions},
                                  {"aborted", std::move(aborted)}};
    write_file(dataset / "index.json", index.dump(2) + "\n");
    write_file(out_dir / "verification.jsonl", verification);
    return report;
}

}  // namespace iocbench::transforms
