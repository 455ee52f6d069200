#include "iocbench/harness/campaign.hpp"

#include "iocbench/digest.hpp"
#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/json_util.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

namespace iocbench::harness {

using nlohmann::json;

std::vector<DatasetVariant> load_dataset(const std::filesystem::path& dataset_dir) {
    const json index = parse_json(read_file(dataset_dir / "index.json"), "index.json");
    if (!index.is_object() || !index.contains("variants") || !index["variants"].is_array()) {
        throw Error(ErrorCode::SchemaError, "index.json has no variants array");
    }
    std::vector<DatasetVariant> out;
    for (const auto& v : index["variants"]) {
        DatasetVariant d;
        d.variant_id = get_string(v, "variant_id");
        d.file_id = get_string(v, "file_id");
        d.phase = get_string(v, "phase");
        d.text = read_file(dataset_dir / get_string(v, "path"));
        d.record = groundtruth::read_record(dataset_dir / get_string(v, "record"));
        const std::string digest = sha256_hex(d.text);
        if (digest != d.record.content_digest || digest != get_string(v, "content_digest")) {
            throw Error(ErrorCode::SchemaError, d.variant_id + ": content digest mismatch; regenerate the dataset");
        }
        if (d.record.phase != d.phase) throw Error(ErrorCode::SchemaError, d.variant_id + ": phase mismatch");
        out.push_back(std::move(d));
    }
    return out;
}

ResumeKey resume_key(const RawResponse& r) { return {r.variant_digest, r.model_name, r.model_version}; }

namespace {

// Splits the log into complete lines; returns the byte length they cover.
std::size_t complete_lines(const std::string& text, std::vector<std::string_view>& lines) {
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '\n') continue;
        if (i > start) lines.emplace_back(text.data() + start, i - start);
        start = i + 1;
    }
    return start;
}

}  // namespace

std::vector<RawResponse> read_campaign_log(const std::filesystem::path& log_path) {
    std::vector<RawResponse> out;
    if (!std::filesystem::exists(log_path)) return out;
    const std::string text = read_file(log_path);
    std::vector<std::string_view> lines;
    complete_lines(text, lines);
    for (const auto line : lines) out.push_back(response_from_json(parse_json(line, "campaign log line")));
    return out;
}

CampaignSummary run_campaign(const std::filesystem::path& dataset_dir,
                             const std::vector<std::shared_ptr<ModelClient>>& clients,
                             const std::filesystem::path& log_path, const CampaignOptions& options) {
    for (const auto& c : clients) c->check_credentials();
    const auto dataset = load_dataset(dataset_dir);

    // Drop a torn final line so appends start on a fresh line.
    if (std::filesystem::exists(log_path)) {
        const std::string text = read_file(log_path);
        std::vector<std::string_view> lines;
        const std::size_t keep = complete_lines(text, lines);
        if (keep != text.size()) std::filesystem::resize_file(log_path, keep);
    }
    std::set<ResumeKey> done;
    for (const auto& r : read_campaign_log(log_path)) done.insert(resume_key(r));

    if (!log_path.parent_path().empty()) std::filesystem::create_directories(log_path.parent_path());
    std::ofstream log(log_path, std::ios::app | std::ios::binary);
    if (!log) throw Error(ErrorCode::IoError, "cannot append to " + log_path.string());

    CampaignSummary summary;
    std::mutex mutex;
    std::atomic<std::size_t> issued{0};
    std::atomic<bool> stop{false};
    std::exception_ptr failure;

    std::vector<QueryRequest> prompts;
    prompts.reserve(dataset.size());
    for (const auto& d : dataset) {
        prompts.push_back({d.variant_id, d.record.content_digest, d.phase, d.text, build_prompt(options.prompt, d.text), &d.record});
    }

    std::vector<std::thread> workers;
    for (const auto& client : clients) {
        const auto& cfg = client->config();
        auto pending = std::make_shared<std::vector<const QueryRequest*>>();
        for (const auto& q : prompts) {
            ++summary.pairs;
            if (done.count({q.variant_digest, cfg.model_name, cfg.model_version}) != 0) {
                ++summary.already_logged;
            } else {
                pending->push_back(&q);
            }
        }
        auto next = std::make_shared<std::atomic<std::size_t>>(0);
        const std::size_t pool = std::max<std::size_t>(1, std::min<std::size_t>(cfg.concurrency, pending->size()));
        for (std::size_t w = 0; w < pool && !pending->empty(); ++w) {
            workers.emplace_back([&, client, pending, next] {
                while (!stop) {
                    const std::size_t i = (*next)++;
                    if (i >= pending->size()) return;
                    if (options.stop_after && issued++ >= *options.stop_after) {
                        stop = true;
                        return;
                    }
                    try {
                        const RawResponse r = client->query(*(*pending)[i]);
                        std::lock_guard lock(mutex);
                        log << response_to_json(r).dump() << '\n';
                        log.flush();
                        ++summary.queried;
                        if (r.error && *r.error == kExhaustedRetries) ++summary.exhausted;
                        if (r.error && *r.error == kHttpError) ++summary.http_errors;
                    } catch (...) {
                        std::lock_guard lock(mutex);
                        if (!failure) failure = std::current_exception();
                        stop = true;
                        return;
                    }
                }
            });
        }
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
    if (!log) throw Error(ErrorCode::IoError, "write to " + log_path.string() + " failed");
    summary.interrupted = stop.load();
    return summary;
}

}  // namespace iocbench::harness
