#include "iocbench/cli/cli.hpp"

#include "iocbench/error.hpp"
#include "iocbench/version.hpp"

#include "CLI11.hpp"

#include <ostream>
#include <sstream>

namespace iocbench::cli {

namespace {

std::set<scoring::ReportFormat> parse_formats(const std::vector<std::string>& names) {
    std::set<scoring::ReportFormat> out;
    for (const auto& n : names) out.insert(scoring::report_format_from_string(n));
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Obfuscated JavaScript IoC benchmark"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    RunConfig config;
    std::string corpus;
    std::uint64_t seed = 0;
    std::string providers;
    std::string runtime_cmd;
    std::vector<std::string> formats;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", config.out, "Output directory")->capture_default_str(); };

    auto* generate = app.add_subcommand("generate", "Build and verify the obfuscated dataset");
    generate->add_option("--corpus", corpus, "Corpus root")->required();
    generate->add_option("--seed", seed, "Master seed")->required();
    generate->add_option("--runtime-cmd", runtime_cmd, "JavaScript runtime for behavioral checks");
    add_out(generate);

    auto* stats = app.add_subcommand("stats", "Corpus and dataset code metrics");
    stats->add_option("--corpus", corpus, "Corpus root");
    add_out(stats);

    auto* run = app.add_subcommand("run", "Query models over the dataset");
    run->add_option("--providers", providers, "Provider config JSON");
    run->add_option("--mock", config.mocks, "Mock model: oracle, scanner, dont-know or a script path");
    run->add_option("--campaign", config.campaign, "Campaign name")->capture_default_str();
    add_out(run);

    auto* score = app.add_subcommand("score", "Score a campaign and render reports");
    score->add_option("--campaign", config.campaign, "Campaign name")->capture_default_str();
    score->add_option("--format", formats, "csv, markdown, json")->delimiter(',');
    add_out(score);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        // Prints help or the version to out, anything else to err.
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    if (!corpus.empty()) config.corpus = corpus;
    if (generate->parsed()) config.master_seed = seed;
    if (!providers.empty()) config.providers = providers;
    if (!runtime_cmd.empty()) config.runtime_cmd = runtime_cmd;
    if (!formats.empty()) {
        try {
            config.formats = parse_formats(formats);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kUsage;
        }
    }

    if (generate->parsed()) return cmd_generate(config, out, err);
    if (stats->parsed()) return cmd_stats(config, out, err);
    if (run->parsed()) return cmd_run(config, out, err);
    return cmd_score(config, out, err);
}

}  // namespace iocbench::cli
