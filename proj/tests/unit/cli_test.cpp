#include "doctest.h"

#include "iocbench/cli/cli.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/harness/campaign.hpp"
#include "test_support.hpp"

#include <cstdlib>
#include <sstream>

using namespace iocbench;
using namespace iocbench::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "iocbench");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus_root() { return testing::fixture_corpus().string(); }

fs::path generated() {
    static fs::path dir;
    if (dir.empty()) {
        dir = testing::scratch_dir("cli_generated");
        REQUIRE(invoke({"generate", "--corpus", corpus_root(), "--seed", "1", "--out", dir.string()}).code == kOk);
    }
    return dir;
}

}  // namespace

TEST_CASE("version and usage") {
    const auto v = invoke({"--version"});
    CHECK(v.code == kOk);
    CHECK(v.out == "1.0.0\n");
    CHECK(invoke({}).code == kUsage);
    CHECK(invoke({"frobnicate"}).code == kUsage);
    CHECK(invoke({"generate", "--corpus", corpus_root()}).code == kUsage);
    CHECK(invoke({"score", "--format", "xml", "--out", "x"}).code == kUsage);
    CHECK(invoke({"generate", "--help"}).code == kOk);
}

TEST_CASE("generate") {
    const auto dir = generated();
    CHECK(harness::load_dataset(dir / "dataset").size() == 156);
    CHECK(fs::exists(dir / "manifest.json"));

    const auto again = testing::scratch_dir("cli_generated_again");
    const auto r = invoke({"generate", "--corpus", corpus_root(), "--seed", "1", "--out", again.string()});
    CHECK(r.code == kOk);
    CHECK(r.out.find("variants: 156") != std::string::npos);
    CHECK(testing::tree_digests(dir) == testing::tree_digests(again));

    CHECK(invoke({"generate", "--corpus", "/nonexistent/corpus", "--seed", "1", "--out", again.string()}).code == kIo);
    const auto empty = testing::scratch_dir("cli_empty_corpus");
    CHECK(invoke({"generate", "--corpus", empty.string(), "--seed", "1", "--out", (empty / "out").string()}).code == kFailed);
}

TEST_CASE("stats") {
    const auto dir = testing::scratch_dir("cli_stats");
    const auto r = invoke({"stats", "--corpus", corpus_root(), "--out", dir.string()});
    CHECK(r.code == kOk);
    CHECK(r.out.find("| Total files | 12 |") != std::string::npos);
    const auto first = read_file(dir / "stats" / "summary.md");
    CHECK(invoke({"stats", "--corpus", corpus_root(), "--out", dir.string()}).code == kOk);
    CHECK(read_file(dir / "stats" / "summary.md") == first);

    const auto with_dataset = invoke({"stats", "--corpus", corpus_root(), "--out", generated().string()});
    CHECK(with_dataset.code == kOk);
    CHECK(with_dataset.out.find("| Total files | 156 |") != std::string::npos);
    CHECK(with_dataset.out.find("| P12 | 12 |") != std::string::npos);

    const auto empty = testing::scratch_dir("cli_stats_empty");
    const auto e = invoke({"stats", "--corpus", empty.string(), "--out", (empty / "out").string()});
    CHECK(e.code == kFailed);
    CHECK(e.err.find("EMPTY_CORPUS") != std::string::npos);
    CHECK(invoke({"stats", "--out", (empty / "nothing").string()}).code == kIo);
}

TEST_CASE("run and score with mocks") {
    const auto out = generated().string();
    const auto r = invoke({"run", "--mock", "oracle", "--campaign", "oracle", "--out", out});
    CHECK(r.code == kOk);
    CHECK(r.out.find("queried: 156") != std::string::npos);
    const auto resumed = invoke({"run", "--mock", "oracle", "--campaign", "oracle", "--out", out});
    CHECK(resumed.out.find("queried: 0") != std::string::npos);
    CHECK(harness::read_campaign_log(generated() / "campaign" / "oracle" / "responses.jsonl").size() == 156);

    const auto s = invoke({"score", "--campaign", "oracle", "--out", out, "--format", "csv,markdown"});
    CHECK(s.code == kOk);
    const auto summary = read_file(generated() / "report" / "summary.csv");
    CHECK(summary.find("mock-oracle,156,1.0000,1.0000,1.0000,0,0,0,0.0000") != std::string::npos);
    const auto md = read_file(generated() / "report" / "report.md");
    CHECK(invoke({"score", "--campaign", "oracle", "--out", out, "--format", "csv,markdown"}).code == kOk);
    CHECK(read_file(generated() / "report" / "report.md") == md);

    CHECK(invoke({"run", "--out", out}).code == kFailed);
    CHECK(invoke({"run", "--mock", "no-such-mock", "--out", out}).code == kFailed);
    CHECK(invoke({"run", "--mock", "oracle", "--out", testing::scratch_dir("cli_no_dataset").string()}).code == kIo);
}

TEST_CASE("score edge cases") {
    const auto out = generated();
    write_file(out / "campaign" / "empty" / "responses.jsonl", "");
    const auto e = invoke({"score", "--campaign", "empty", "--out", out.string()});
    CHECK(e.code == kFailed);
    CHECK(e.err.find("empty") != std::string::npos);
    CHECK(invoke({"score", "--campaign", "missing", "--out", out.string()}).code == kIo);
}

TEST_CASE("credential and retry failures exit 4") {
    const auto dir = testing::scratch_dir("cli_providers");
    ::unsetenv("IOCBENCH_API_KEY_CLIMISSING");
    write_file(dir / "missing.json", R"({"providers": [{"provider_id": "climissing", "adapter": "openai",
        "model_name": "m", "model_version": "v"}]})");
    const auto a = invoke({"run", "--providers", (dir / "missing.json").string(), "--campaign", "auth", "--out",
                        generated().string()});
    CHECK(a.code == kAuthOrRetries);
    CHECK(a.err.find("AUTH_ERROR") != std::string::npos);

    const std::string secret = "cli-dummy-secret-7731";
    ::setenv("IOCBENCH_API_KEY_CLIDOWN", secret.c_str(), 1);
    write_file(dir / "down.json", R"({"providers": [{"provider_id": "clidown", "adapter": "openai",
        "model_name": "m", "model_version": "v", "endpoint": "http://127.0.0.1:1/v1/chat/completions",
        "max_retries": 0, "rate_limit": 0, "concurrency": 4, "timeout_seconds": 2}]})");
    const auto d = invoke({"run", "--providers", (dir / "down.json").string(), "--campaign", "down", "--out",
                        generated().string()});
    CHECK(d.code == kAuthOrRetries);
    CHECK(d.out.find("exhausted retries: 156") != std::string::npos);
    const auto log = read_file(generated() / "campaign" / "down" / "responses.jsonl");
    CHECK(log.find(secret) == std::string::npos);
    CHECK(d.out.find(secret) == std::string::npos);
    CHECK(d.err.find(secret) == std::string::npos);
    ::unsetenv("IOCBENCH_API_KEY_CLIDOWN");
}
