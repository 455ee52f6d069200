#include "iocbench/cli/cli.hpp"

#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/harness/campaign.hpp"
#include "iocbench/harness/mock.hpp"
#include "iocbench/jsource/parser.hpp"
#include "iocbench/scoring/score.hpp"
#include "iocbench/transforms/pipeline.hpp"

#include "json.hpp"

#include <map>
#include <ostream>
#include <sstream>

namespace iocbench::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::IoError: return kIo;
        case ErrorCode::AuthError:
        case ErrorCode::ExhaustedRetries: return kAuthOrRetries;
        default: return kFailed;
    }
}

// Runs a command body, mapping library errors onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const fs::filesystem_error& e) {
        err << "error: IO_ERROR: " << e.what() << "\n";
        return kIo;
    }
}

void require_dir(const fs::path& p, const std::string& what) {
    std::error_code ec;
    if (!fs::is_directory(p, ec)) throw Error(ErrorCode::IoError, what + " is not a readable directory: " + p.string());
}

void require_file(const fs::path& p, const std::string& what) {
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) throw Error(ErrorCode::IoError, what + " not found: " + p.string());
}

corpus::CorpusManifest manifest_of(std::vector<corpus::CodeStats> stats) {
    corpus::CorpusManifest m;
    for (auto& s : stats) m.entries.push_back({"", "", "", std::move(s)});
    return m;
}

json summary_json(const corpus::CorpusSummary& s) {
    return {{"file_count", s.file_count},
            {"avg_loc", rational_to_json(s.avg_loc)},
            {"min_loc", s.min_loc},
            {"max_loc", s.max_loc},
            {"avg_functions", rational_to_json(s.avg_functions)},
            {"avg_cyclomatic_complexity", rational_to_json(s.avg_cyclomatic_complexity)}};
}

std::string phase_table(const DatasetSummary& d) {
    std::ostringstream os;
    os << "| Phase | Files | Avg. LOC | LOC range | Avg. functions | Avg. CC |\n|---|---:|---:|---|---:|---:|\n";
    for (const auto& [phase, s] : d.per_phase) {
        os << "| " << phase << " | " << s.file_count << " | " << to_decimal(s.avg_loc, 1) << " | [" << s.min_loc << ", "
           << s.max_loc << "] | " << to_decimal(s.avg_functions, 2) << " | "
           << to_decimal(s.avg_cyclomatic_complexity, 2) << " |\n";
    }
    return os.str();
}

// Verdict counts from <out>/verification.jsonl.
std::map<std::string, std::size_t> verification_verdicts(const fs::path& path) {
    std::map<std::string, std::size_t> out;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("verdict")) throw Error(ErrorCode::SchemaError, "bad verification line");
        ++out[j["verdict"].get<std::string>()];
    }
    return out;
}

}  // namespace

fs::path dataset_dir(const RunConfig& c) { return c.out / "dataset"; }
fs::path campaign_log(const RunConfig& c) { return c.out / "campaign" / c.campaign / "responses.jsonl"; }
fs::path report_dir(const RunConfig& c) { return c.out / "report"; }

DatasetSummary summarize_dataset(const fs::path& dir) {
    std::map<std::string, std::vector<corpus::CodeStats>, decltype(&scoring::phase_less)> by_phase(&scoring::phase_less);
    std::vector<corpus::CodeStats> all;
    for (const auto& v : harness::load_dataset(dir)) {
        auto s = corpus::compute_code_stats(js::load_source(v.text));
        by_phase[v.phase].push_back(s);
        all.push_back(std::move(s));
    }
    if (all.empty()) throw Error(ErrorCode::EmptyCorpus, "dataset has no variants");
    DatasetSummary d;
    d.overall = corpus::summarize_corpus(manifest_of(std::move(all)));
    for (auto& [phase, stats] : by_phase) d.per_phase.emplace_back(phase, corpus::summarize_corpus(manifest_of(std::move(stats))));
    return d;
}

int cmd_generate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!c.corpus) throw Error(ErrorCode::ConfigError, "generate needs --corpus");
        if (!c.master_seed) throw Error(ErrorCode::ConfigError, "generate needs --seed");
        require_dir(*c.corpus, "corpus");
        const auto ingest = corpus::ingest_corpus(*c.corpus, {}, *c.master_seed);
        write_file(c.out / "manifest.json", corpus::manifest_to_json(ingest.manifest).dump(2) + "\n");
        json rejected = json::array();
        for (const auto& r : ingest.rejections) rejected.push_back({{"path", r.path}, {"reason", r.reason}, {"detail", r.detail}});
        write_file(c.out / "rejections.json", rejected.dump(2) + "\n");

        transforms::GenerateOptions opt;
        opt.runtime_command = c.runtime_cmd;
        const auto report = transforms::generate_all(ingest.manifest, *c.corpus, *c.master_seed, c.out, opt);
        out << "files: " << ingest.manifest.entries.size() << " accepted, " << ingest.rejections.size() << " rejected\n"
            << "variants: " << report.variant_count << "\n"
            << "verification failures: " << report.verification_failures << "\n";
        if (c.runtime_cmd) {
            out << "behavioral: " << report.behavioral_passes << " passed, " << report.behavioral_skips << " skipped\n";
        }
        for (const auto& a : report.aborted) err << "aborted " << a.variant_id << ": " << a.reason << "\n";
        for (const auto& [ioc, files] : report.ioc_collisions) {
            err << "warning: " << ioc << " shared by " << files.size() << " files\n";
        }
        return report.verification_failures == 0 && report.aborted.empty() ? kOk : kFailed;
    });
}

int cmd_stats(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto dataset = dataset_dir(c);
        const bool have_dataset = fs::exists(dataset / "index.json");
        if (!c.corpus && !have_dataset) throw Error(ErrorCode::IoError, "stats needs --corpus or a generated dataset");
        std::ostringstream md;
        json j = json::object();
        md << "# Dataset features\n\n";
        if (c.corpus) {
            require_dir(*c.corpus, "corpus");
            const auto ingest = corpus::ingest_corpus(*c.corpus, {}, c.master_seed.value_or(0));
            const auto s = corpus::summarize_corpus(ingest.manifest);
            md << corpus::render_summary(s, "Original") << "\n";
            j["original"] = summary_json(s);
            j["rejected"] = ingest.rejections.size();
        }
        if (have_dataset) {
            const auto d = summarize_dataset(dataset);
            md << corpus::render_summary(d.overall, "Generated (all phases)") << "\n" << phase_table(d);
            j["generated"] = summary_json(d.overall);
            json phases = json::object();
            for (const auto& [phase, s] : d.per_phase) phases[phase] = summary_json(s);
            j["per_phase"] = phases;
        }
        write_file(c.out / "stats" / "summary.md", md.str());
        write_file(c.out / "stats" / "summary.json", j.dump(2) + "\n");
        out << md.str();
        return kOk;
    });
}

int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto dataset = dataset_dir(c);
        require_file(dataset / "index.json", "dataset index");
        if (c.providers) require_file(*c.providers, "provider config");
        if (!c.providers && c.mocks.empty()) throw Error(ErrorCode::ConfigError, "run needs --providers or --mock");

        std::vector<std::shared_ptr<harness::ModelClient>> clients;
        for (const auto& m : c.mocks) clients.push_back(harness::make_mock_client(harness::load_mock_script(m)));
        if (c.providers) {
            for (const auto& cfg : harness::load_provider_configs(*c.providers)) {
                if (cfg.adapter == "mock") {
                    clients.push_back(harness::make_mock_client(harness::load_mock_script(cfg.model_name)));
                } else {
                    clients.push_back(harness::make_http_client(cfg));
                }
            }
        }

        const auto verification = c.out / "verification.jsonl";
        if (fs::exists(verification)) {
            const auto verdicts = verification_verdicts(verification);
            if (verdicts.count("fail")) {
                err << "error: dataset has " << verdicts.at("fail") << " failed verification checks\n";
                return static_cast<int>(kFailed);
            }
        }

        const auto s = harness::run_campaign(dataset, clients, campaign_log(c));
        out << "pairs: " << s.pairs << "\nalready logged: " << s.already_logged << "\nqueried: " << s.queried
            << "\nexhausted retries: " << s.exhausted << "\nhttp errors: " << s.http_errors << "\n";
        if (s.pairs > 0 && s.exhausted * 10 > s.pairs) {
            err << "error: EXHAUSTED_RETRIES on more than 10% of pairs\n";
            return static_cast<int>(kAuthOrRetries);
        }
        return static_cast<int>(kOk);
    });
}

int cmd_score(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto log = campaign_log(c);
        require_file(log, "campaign log");
        const auto variants = harness::load_dataset(dataset_dir(c));
        const auto outcomes = scoring::score_log(harness::read_campaign_log(log), variants);
        const auto report = scoring::build_report(outcomes);
        scoring::write_report(report, report_dir(c), c.formats);
        if (outcomes.empty()) {
            err << "warning: campaign log is empty; the report has no rows\n";
            return kFailed;
        }
        for (const auto& m : report.by_model) {
            const auto acc = m.accuracy();
            out << m.model << ": " << m.queries() << " queries, dr_raw " << to_decimal(m.dr_raw(), 4) << ", accuracy "
                << (acc ? to_decimal(*acc, 4) : "n/a") << "\n";
        }
        return kOk;
    });
}

}  // namespace iocbench::cli
