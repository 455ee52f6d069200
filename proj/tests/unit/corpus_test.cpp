#include "doctest.h"

#include "iocbench/corpus/corpus.hpp"
#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "test_support.hpp"

#include <algorithm>

using namespace iocbench;
using namespace iocbench::corpus;
namespace fs = std::filesystem;

namespace {

CodeStats stats_of(const std::string& src) { return compute_code_stats(js::load_source(src)); }

ErrorCode ingest_error(const fs::path& root) {
    try {
        ingest_corpus(root, {}, 1);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("code stats basics") {
    const CodeStats a = stats_of("function f(){return 1}");
    CHECK(a.loc == 1);
    CHECK(a.function_count == 1);
    CHECK(a.cyclomatic_complexity == make_rational(1));
    CHECK(stats_of("function f(x){ if (x) {} while (x) {} }").cyclomatic_complexity == make_rational(3));
    CHECK(stats_of("").loc == 0);
}

TEST_CASE("hand-counted stats fixtures") {
    const auto oracle = nlohmann::json::parse(read_file(testing::fixture_dir() / "stats" / "oracle.json"));
    REQUIRE(oracle.size() == 5);
    for (const auto& [name, want] : oracle.items()) {
        CAPTURE(name);
        const CodeStats s = compute_code_stats(js::load_source(read_file(testing::fixture_dir() / "stats" / name)));
        CHECK(s.loc == want["loc"].get<std::uint64_t>());
        CHECK(s.function_count == want["function_count"].get<std::uint64_t>());
        CHECK(s.cyclomatic_complexity == rational_from_json(want["cc"]));
    }
}

TEST_CASE("function count and complexity ignore comments and blank lines") {
    for (const auto& f : testing::fixture_js_files()) {
        const std::string text = read_file(f);
        const CodeStats base = stats_of(text);
        std::string noisy;
        for (char c : text) {
            noisy += c;
            if (c == '\n') noisy += "\n// noise comment\n\n";
        }
        const CodeStats s = stats_of("/* lead */\n" + noisy);
        CHECK(s.function_count == base.function_count);
        CHECK(s.cyclomatic_complexity == base.cyclomatic_complexity);
        CHECK(s.loc == base.loc);
        CHECK(s.loc >= 1);
        if (s.function_count >= 1) CHECK(s.cyclomatic_complexity >= make_rational(1));
    }
}

TEST_CASE("ids and categories") {
    CHECK(file_id_for("sorting/bubble_sort.js") == "sorting__bubble_sort");
    CHECK(file_id_for("a/b/c.min.js") == "a__b__c.min");
    CHECK(file_id_for("top.js") == "top");
    CHECK(category_for("sorting/bubble_sort.js") == "sorting");
    CHECK(category_for("top.js") == "uncategorized");
}

TEST_CASE("external dependencies") {
    CHECK(has_external_dependency(js::tokenize("var fs = require('fs');")));
    CHECK(has_external_dependency(js::tokenize("import x from 'y';")));
    CHECK_FALSE(has_external_dependency(js::tokenize("var o = { require: 1 }; o.require; // require('x')")));
}

TEST_CASE("ingestion filters and logs rejections") {
    const fs::path root = testing::scratch_dir("ingest");
    write_file(root / "algo" / "a.js", "function a(){ return 1; }\n");
    write_file(root / "algo" / "b.js", "var b = 2;\n");
    write_file(root / "c.js", "var c = [1, 2];\n");
    write_file(root / "algo" / "imports.js", "import x from './x';\nx();\n");
    write_file(root / "notes.txt", "ignored");
    const IngestResult r = ingest_corpus(root, {}, 9);
    REQUIRE(r.manifest.entries.size() == 3);
    CHECK(r.manifest.entries[0].path == "algo/a.js");
    CHECK(r.manifest.entries[1].path == "algo/b.js");
    CHECK(r.manifest.entries[2].path == "c.js");
    CHECK(r.manifest.entries[2].category == "uncategorized");
    REQUIRE(r.rejections.size() == 1);
    CHECK(r.rejections[0].reason == "EXTERNAL_DEPENDENCY");

    write_file(root / "bad" / "syntax.js", "var = ;");
    write_file(root / "bad" / "gen.js", "function* g(){}");
    const IngestResult r2 = ingest_corpus(root, {}, 9);
    CHECK(r2.manifest.entries.size() == 3);
    std::vector<std::string> reasons;
    for (const auto& x : r2.rejections) reasons.push_back(x.reason);
    std::sort(reasons.begin(), reasons.end());
    CHECK(reasons == std::vector<std::string>{"EXTERNAL_DEPENDENCY", "PARSE_ERROR", "PARSE_UNSUPPORTED"});

    SelectionCriteria capped;
    capped.max_per_category = 1;
    capped.max_loc = 1;
    const IngestResult r3 = ingest_corpus(root, capped, 9);
    CHECK(r3.manifest.entries.size() == 2);
}

TEST_CASE("empty and missing roots") {
    CHECK(ingest_error(testing::scratch_dir("empty")) == ErrorCode::EmptyCorpus);
    CHECK(ingest_error(testing::scratch_dir("x") / "missing") == ErrorCode::IoError);
}

TEST_CASE("fixture corpus manifest, json roundtrip and stable re-ingestion") {
    const IngestResult r = ingest_corpus(testing::fixture_corpus(), {}, 2024);
    CHECK(r.rejections.empty());
    REQUIRE(r.manifest.entries.size() == 12);
    for (const auto& e : r.manifest.entries) CHECK(e.stats.loc > 0);
    const auto j = manifest_to_json(r.manifest);
    CHECK(manifest_from_json(j) == r.manifest);
    CHECK(manifest_to_json(ingest_corpus(testing::fixture_corpus(), {}, 2024).manifest).dump() == j.dump());
    auto broken = j;
    broken["entries"][0]["extra"] = 1;
    CHECK_THROWS_AS(manifest_from_json(broken), Error);
}

TEST_CASE("summary equals a brute-force fold") {
    CorpusManifest one;
    one.entries.push_back({"x", "x.js", "uncategorized", {10, 2, make_rational(3, 2)}});
    const CorpusSummary s1 = summarize_corpus(one);
    CHECK(s1.avg_loc == make_rational(10));
    CHECK(s1.min_loc == 10);
    CHECK(s1.max_loc == 10);

    const auto m = ingest_corpus(testing::fixture_corpus(), {}, 1).manifest;
    const CorpusSummary s = summarize_corpus(m);
    std::uint64_t loc = 0;
    std::uint64_t fns = 0;
    std::uint64_t lo = UINT64_MAX;
    std::uint64_t hi = 0;
    Rational cc(0);
    for (const auto& e : m.entries) {
        loc += e.stats.loc;
        fns += e.stats.function_count;
        lo = std::min(lo, e.stats.loc);
        hi = std::max(hi, e.stats.loc);
        cc += e.stats.cyclomatic_complexity;
    }
    const auto n = static_cast<std::int64_t>(m.entries.size());
    CHECK(s.file_count == 12);
    CHECK(s.avg_loc == make_rational(static_cast<std::int64_t>(loc), n));
    CHECK(s.avg_functions == make_rational(static_cast<std::int64_t>(fns), n));
    CHECK(s.avg_cyclomatic_complexity == cc / make_rational(n));
    CHECK(s.min_loc == lo);
    CHECK(s.max_loc == hi);
    CHECK(render_summary(s, "Original").find("| Total files | 12 |") != std::string::npos);
}

TEST_CASE("decimal rendering") {
    CHECK(to_decimal(make_rational(7, 2), 2) == "3.50");
    CHECK(to_decimal(make_rational(2, 3), 3) == "0.667");
    CHECK(to_decimal(make_rational(1, 8), 2) == "0.13");
    CHECK(to_decimal(make_rational(-1, 8), 2) == "-0.13");
    CHECK(to_decimal(make_rational(5), 0) == "5");
}
