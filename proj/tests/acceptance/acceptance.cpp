// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.

#include "iocbench/corpus/corpus.hpp"
#include "iocbench/crypto/cipher.hpp"
#include "iocbench/crypto/codec.hpp"
#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/groundtruth/verify.hpp"
#include "iocbench/harness/campaign.hpp"
#include "iocbench/harness/mock.hpp"
#include "iocbench/ioc/ioc.hpp"
#include "iocbench/scoring/normalize.hpp"
#include "iocbench/scoring/report.hpp"
#include "iocbench/transforms/phase.hpp"
#include "iocbench/transforms/pipeline.hpp"
#include "scoring_oracle.hpp"
#include "test_support.hpp"

#include "json.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

using namespace iocbench;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

// Accumulates failed expectations; the first few are kept for the report.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        ++failures_;
        if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    Verdict verdict(const std::string& summary) const {
        if (failures_ == 0) return {true, summary + ", " + std::to_string(checks_) + " checks"};
        return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " checks failed: " + notes_};
    }

private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::string notes_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

fs::path generate(const std::string& name, std::uint64_t seed) {
    const auto out = testing::scratch_dir(name);
    const auto ingest = corpus::ingest_corpus(testing::fixture_corpus(), {}, seed);
    transforms::generate_all(ingest.manifest, testing::fixture_corpus(), seed, out);
    return out;
}

fs::path baseline() {
    static const fs::path out = generate("acceptance_seed1", 1);
    return out;
}

std::map<std::string, std::string> variant_digests(const fs::path& dataset) {
    const auto index = json::parse(read_file(dataset / "index.json"));
    std::map<std::string, std::string> out;
    for (const auto& v : index["variants"]) out[v["variant_id"]] = v["content_digest"];
    return out;
}

Verdict dataset_cardinality() {
    Checker c;
    const auto start = Clock::now();
    const auto out = generate("acceptance_cardinality", 1);
    const double secs = seconds_since(start);
    const auto files = testing::fixture_js_files().size();
    std::size_t js = 0, records = 0;
    for (const auto& e : fs::recursive_directory_iterator(out / "dataset")) {
        if (!e.is_regular_file()) continue;
        const auto rel = e.path().lexically_relative(out / "dataset").generic_string();
        if (rel.rfind("records/", 0) == 0) {
            records += e.path().extension() == ".json";
        } else if (e.path().extension() == ".js") {
            ++js;
        }
    }
    c.expect(files == 12, "fixture corpus has " + std::to_string(files) + " files");
    c.expect(js == 13 * files, std::to_string(js) + " variant files");
    c.expect(records == 13 * files, std::to_string(records) + " records");
    c.expect(harness::load_dataset(out / "dataset").size() == 156, "index does not list 156 variants");
    c.expect(static_cast<std::size_t>(transforms::kPhaseCount) * 336 == 4368, "13 x 336 != 4,368");
    c.expect(secs < 60, "took " + std::to_string(secs) + " s");
    return c.verdict(std::to_string(js) + " variants and " + std::to_string(records) + " records for 12 files");
}

Verdict determinism() {
    Checker c;
    const auto start = Clock::now();
    const auto a = baseline();
    const auto b = generate("acceptance_seed1_again", 1);
    const auto da = testing::tree_digests(a);
    c.expect(!da.empty() && da == testing::tree_digests(b), "same seed produced different trees");
    const auto other = generate("acceptance_seed2", 2);
    const auto va = variant_digests(a / "dataset");
    const auto vb = variant_digests(other / "dataset");
    std::size_t changed = 0;
    for (const auto& [id, d] : va) changed += !vb.count(id) || vb.at(id) != d;
    c.expect(va.size() == 156 && changed * 100 >= 95 * va.size(),
             "seed change altered only " + std::to_string(changed) + "/" + std::to_string(va.size()));
    const double secs = seconds_since(start);
    c.expect(secs < 120, "took " + std::to_string(secs) + " s");
    return c.verdict(std::to_string(da.size()) + " files identical, " + std::to_string(changed) + "/" +
                     std::to_string(va.size()) + " digests changed with a new seed");
}

Verdict verification_pass_rate() {
    Checker c;
    std::map<std::string, std::size_t> passes;
    std::istringstream lines(read_file(baseline() / "verification.jsonl"));
    for (std::string line; std::getline(lines, line);) {
        const auto j = json::parse(line);
        if (j["verdict"] == "pass") ++passes[j["check"]];
        if (j["check"] != "behavioral") c.expect(j["verdict"] == "pass", std::string(j["variant_id"]) + " " + line);
    }
    c.expect(passes["syntactic"] == 156, std::to_string(passes["syntactic"]) + " syntactic passes");
    c.expect(passes["ground_truth"] == 156, std::to_string(passes["ground_truth"]) + " ground-truth passes");

    Rng rng(20240611);
    std::size_t trials = 0, skipped = 0;
    for (const auto& v : harness::load_dataset(baseline() / "dataset")) {
        c.expect(groundtruth::verify_ground_truth(v.text, v.record).verdict == groundtruth::Verdict::Pass,
                 v.variant_id + " fresh");
        if (v.record.encoding == "plain") continue;
        for (int t = 0; t < 2; ++t) {
            std::string literal;
            if (v.record.encoding == "base64") {
                literal = crypto::base64_encode(crypto::to_bytes(v.record.ioc_canonical));
            } else {
                literal = rng.coin() ? *v.record.key_hex : *v.record.ciphertext_hex;
            }
            const auto at = v.text.find("\"" + literal + "\"");
            c.expect(at != std::string::npos, v.variant_id + " literal not found");
            if (at == std::string::npos) continue;
            const auto body = v.record.encoding == "base64" ? literal.find_first_of('=') : std::string::npos;
            const auto pos = rng.below(body == std::string::npos ? literal.size() : body);
            const std::string alphabet = v.record.encoding == "base64"
                                             ? "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/"
                                             : "0123456789abcdef";
            char repl = literal[pos];
            while (repl == literal[pos]) repl = alphabet[rng.below(alphabet.size())];
            std::string changed_literal = literal;
            changed_literal[pos] = repl;
            if (v.record.encoding == "base64") {
                try {
                    if (crypto::base64_decode(changed_literal) == crypto::base64_decode(literal)) {
                        ++skipped;
                        continue;
                    }
                } catch (const Error&) {
                }
            }
            std::string text = v.text;
            text[at + 1 + pos] = repl;
            ++trials;
            c.expect(groundtruth::verify_ground_truth(text, v.record).verdict == groundtruth::Verdict::Fail,
                     v.variant_id + " tamper at " + std::to_string(pos) + " still passes");
        }
    }
    c.expect(trials >= 100, "only " + std::to_string(trials) + " tamper trials");
    return c.verdict("156/156 syntactic and ground-truth passes, " + std::to_string(trials) +
                     " tampers all rejected (" + std::to_string(skipped) + " decode-equivalent skipped)");
}

Verdict concealment() {
    Checker c;
    std::size_t n = 0;
    for (const auto& v : harness::load_dataset(baseline() / "dataset")) {
        const auto k = count_of(v.text, v.record.ioc_canonical);
        const auto want = v.phase == "P0" ? 1u : 0u;
        c.expect(k == want, v.variant_id + " contains the indicator " + std::to_string(k) + " times");
        ++n;
    }
    return c.verdict(std::to_string(n) + " variants");
}

crypto::Bytes hex(const char* s) { return crypto::hex_decode(s); }

crypto::Bytes openssl_cbc(const crypto::Bytes& pt, const crypto::AesMaterial& m) {
    crypto::Bytes out(pt.size() + 16);
    int n1 = 0, n2 = 0;
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    EVP_EncryptInit_ex(ctx, EVP_aes_256_cbc(), nullptr, m.key.data(), m.iv.data());
    EVP_EncryptUpdate(ctx, out.data(), &n1, pt.data(), static_cast<int>(pt.size()));
    EVP_EncryptFinal_ex(ctx, out.data() + n1, &n2);
    EVP_CIPHER_CTX_free(ctx);
    out.resize(static_cast<std::size_t>(n1 + n2));
    return out;
}

Verdict crypto_correctness() {
    Checker c;
    const auto start = Clock::now();
    crypto::AesKey key{};
    const auto kb = hex("603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4");
    std::copy(kb.begin(), kb.end(), key.begin());
    const char* plain[] = {"6bc1bee22e409f96e93d7e117393172a", "ae2d8a571e03ac9c9eb76fac45af8e51",
                           "30c81c46a35ce411e5fbc1191a0a52ef", "f69f2445df4f9b17ad2b417be66c3710"};
    const char* ecb[] = {"f3eed1bdb5d2a03c064b5a7e3db181f8", "591ccb10d410ed26dc5ba74a31362870",
                         "b6ed21b99ca6f4f9f153e7b1beafed1d", "23304b7a39f9f3ff067d8d8f9e24ecc7"};
    const char* cbc[] = {"f58c4c04d6e5f1ba779eabfb5f7bfbd6", "9cfc4e967edb808d679f777bc6702c7d",
                         "39f23369a9d9bacfa530e26304231461", "b2eb05e2c39be9fcda6c19078c6a9d1b"};
    const crypto::Aes256 aes(key);
    crypto::Bytes all_plain;
    for (int i = 0; i < 4; ++i) {
        crypto::AesBlock in{};
        const auto p = hex(plain[i]);
        std::copy(p.begin(), p.end(), in.begin());
        const auto out = aes.encrypt_block(in);
        c.expect(crypto::hex_encode(out) == ecb[i], std::string("ECB block ") + std::to_string(i));
        c.expect(aes.decrypt_block(out) == in, std::string("ECB inverse ") + std::to_string(i));
        all_plain.insert(all_plain.end(), p.begin(), p.end());
    }
    crypto::AesMaterial m;
    m.key = key;
    const auto iv = hex("000102030405060708090a0b0c0d0e0f");
    std::copy(iv.begin(), iv.end(), m.iv.begin());
    const auto ct = crypto::aes256_encrypt(all_plain, m);
    c.expect(ct.size() == 80, "CBC output carries a padding block");
    for (int i = 0; i < 4 && ct.size() >= 64; ++i) {
        c.expect(crypto::hex_encode(std::span(ct).subspan(16 * static_cast<std::size_t>(i), 16)) == cbc[i],
                 "CBC block " + std::to_string(i));
    }
    c.expect(crypto::aes256_decrypt(ct, m) == all_plain, "CBC roundtrip");

    Rng rng(55);
    for (int i = 0; i < 1000; ++i) {
        const auto data = rng.bytes(rng.below(300));
        auto k = rng.bytes(1 + rng.below(32));
        c.expect(crypto::xor_bytes(crypto::xor_bytes(data, k), k) == data, "xor involution");
        c.expect(crypto::base64_decode(crypto::base64_encode(data)) == data, "base64 roundtrip");
        const auto mat = crypto::AesMaterial::generate(rng);
        const auto enc = crypto::aes256_encrypt(data, mat);
        c.expect(enc == openssl_cbc(data, mat), "CBC disagrees with OpenSSL");
        c.expect(crypto::aes256_decrypt(enc, mat) == data, "CBC roundtrip");
    }
    const double secs = seconds_since(start);
    c.expect(secs < 10, "took " + std::to_string(secs) + " s");
    return c.verdict("SP 800-38A ECB and CBC vectors exact; 1,000 xor, base64 and CBC roundtrips");
}

Verdict metrics_oracle() {
    Checker c;
    Rng rng(6006);
    std::size_t total = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto outs = testing::random_outcomes(rng, 1 + rng.below(1000));
        total += outs.size();
        c.expect(testing::aggregate_matches_oracle(outs), "set " + std::to_string(i));
    }
    return c.verdict("1,000 random sets, " + std::to_string(total) + " outcomes");
}

Verdict normalization() {
    Checker c;
    const auto dir = testing::fixture_dir() / "responses";
    const auto expected = json::parse(read_file(dir / "expected.json"));
    c.expect(expected.size() >= 20, "only " + std::to_string(expected.size()) + " fixtures");
    std::set<std::string> decisions;
    for (const auto& [file, want] : expected.items()) {
        const auto a = scoring::normalize_response(read_file(dir / file));
        decisions.insert(std::string(scoring::to_string(a.decision)));
        c.expect(scoring::to_string(a.decision) == want["decision"].get<std::string>(), file + " decision");
        c.expect(want["value"].is_null() ? !a.value : a.value == want["value"].get<std::string>(), file + " value");
    }
    c.expect(decisions.size() == 4, "fixtures do not cover all four decisions");
    Rng rng(77);
    for (int i = 0; i < 20000; ++i) {
        const auto b = rng.bytes(rng.below(256));
        std::string s(b.begin(), b.end());
        if (rng.coin()) s = "{\"answer\":\"" + s + "\",\"ioc\":\"" + s + "\"}";
        const auto d = static_cast<int>(scoring::normalize_response(s).decision);
        c.expect(d >= 0 && d < 4, "decision out of range");
    }
    return c.verdict(std::to_string(expected.size()) + " fixtures, 20,000 fuzz inputs");
}

Verdict taxonomy() {
    Checker c;
    using ioc::ArtifactClass;
    const std::vector<std::tuple<std::string, ArtifactClass, std::string>> rows = {
        {"192.168.17.101", ArtifactClass::Ipv4, "IP addresses"},
        {"192.168.1.1", ArtifactClass::Ipv4, "IP addresses"},
        {"198.51.100.1", ArtifactClass::Ipv4, "IP addresses"},
        {"160.9.34.0", ArtifactClass::Ipv4, "IP addresses"},
        {"34.207.87.0", ArtifactClass::Ipv4, "IP addresses"},
        {"8.7.7.8", ArtifactClass::Ipv4, "IP addresses"},
        {"172.31.0.0/16", ArtifactClass::Cidr, "IP addresses"},
        {"192.168.17.105", ArtifactClass::Ipv4, "IP addresses"},
        {"72.70.83.9", ArtifactClass::Ipv4, "IP addresses"},
        {"185.199.108.153", ArtifactClass::Ipv4, "IP addresses"},
        {"www.cs.auckland.ac.nz", ArtifactClass::Domain, "Domain"},
        {"en.wikipedia.org", ArtifactClass::Domain, "Domain"},
        {"Not Found in Plain Text", ArtifactClass::OtherString, "String"},
        {"N/A", ArtifactClass::OtherString, "String"},
        {"Encrypted data", ArtifactClass::OtherString, "String"},
        {"U2FsdGVkX1+vupppZksvRf5pq5g5XjFRlipRkwB0K1Y=", ArtifactClass::Base64Blob, "Base64"},
    };
    for (const auto& [value, cls, group] : rows) {
        const auto got = ioc::classify_artifact(value);
        c.expect(got == cls, value + " classified as " + std::string(ioc::to_string(got)));
        c.expect(scoring::row_group(got) == group, value + " grouped as " + std::string(scoring::row_group(got)));
    }
    // CryptoJS output always starts with the base64 of "Salted__".
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        auto raw = crypto::to_bytes("Salted__");
        const auto tail = rng.bytes(8 + 16 * (1 + rng.below(3)));
        raw.insert(raw.end(), tail.begin(), tail.end());
        const auto blob = crypto::base64_encode(raw);
        c.expect(blob.rfind("U2FsdGVkX1", 0) == 0 && ioc::classify_artifact(blob) == ArtifactClass::Base64Blob,
                 blob + " is not a base64 blob");
    }
    return c.verdict(std::to_string(rows.size()) + " table values and 50 generated CryptoJS blobs");
}

Verdict figure2_cliff() {
    Checker c;
    const auto start = Clock::now();
    const auto dataset = baseline() / "dataset";
    const auto log = testing::scratch_dir("acceptance_scanner") / "responses.jsonl";
    harness::run_campaign(dataset, {std::shared_ptr<harness::ModelClient>(harness::make_mock_client(harness::scanner_script()))},
                          log);
    const auto outcomes = scoring::score_log(harness::read_campaign_log(log), harness::load_dataset(dataset));
    const auto report = scoring::build_report(outcomes);
    c.expect(report.by_model_phase.size() == 13, "phase matrix has " + std::to_string(report.by_model_phase.size()) + " rows");
    std::string row;
    for (const auto& m : report.by_model_phase) {
        const auto id = transforms::phase_from_name(m.phase).id;
        const auto want = make_rational(id <= 4 ? 1 : 0);
        c.expect(m.dr_raw() == want, m.phase + " YES fraction " + to_decimal(m.dr_raw(), 4));
        row += (m.dr_raw() == make_rational(1) ? 'Y' : m.dr_raw() == make_rational(0) ? 'N' : '?');
    }
    const double secs = seconds_since(start);
    c.expect(secs < 60, "took " + std::to_string(secs) + " s");
    return c.verdict("P0..P12 = " + row);
}

Verdict code_metrics() {
    Checker c;
    const auto dir = testing::fixture_dir() / "stats";
    const auto oracle = json::parse(read_file(dir / "oracle.json"));
    c.expect(oracle.size() == 5, "expected five hand-checked fixtures");
    for (const auto& [file, want] : oracle.items()) {
        const auto s = corpus::compute_code_stats(js::load_source(read_file(dir / file)));
        c.expect(s.loc == want["loc"].get<std::uint64_t>(), file + " loc " + std::to_string(s.loc));
        c.expect(s.function_count == want["function_count"].get<std::uint64_t>(),
                 file + " functions " + std::to_string(s.function_count));
        c.expect(s.cyclomatic_complexity == rational_from_json(want["cc"]),
                 file + " cc " + to_decimal(s.cyclomatic_complexity, 3));
    }
    const auto original = corpus::summarize_corpus(corpus::ingest_corpus(testing::fixture_corpus(), {}, 1).manifest);
    std::vector<corpus::CodeStats> obfuscated;
    for (const auto& v : harness::load_dataset(baseline() / "dataset")) {
        if (v.phase != "P0") obfuscated.push_back(corpus::compute_code_stats(js::load_source(v.text)));
    }
    corpus::CorpusManifest m;
    for (auto& s : obfuscated) m.entries.push_back({"", "", "", s});
    const auto after = corpus::summarize_corpus(m);
    c.expect(after.avg_functions > original.avg_functions, "obfuscated avg functions " +
                                                               to_decimal(after.avg_functions, 2) + " <= original " +
                                                               to_decimal(original.avg_functions, 2));
    return c.verdict("5 oracles exact; avg functions " + to_decimal(original.avg_functions, 2) + " original vs " +
                     to_decimal(after.avg_functions, 2) + " obfuscated");
}

Verdict campaign_logging() {
    Checker c;
    const auto dataset = baseline() / "dataset";
    const auto dir = testing::scratch_dir("acceptance_campaign");
    const std::regex rfc3339(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?Z)");

    const auto full = dir / "full.jsonl";
    harness::run_campaign(dataset, {std::shared_ptr<harness::ModelClient>(harness::make_mock_client(harness::oracle_script()))},
                          full);
    std::istringstream in(read_file(full));
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line); ++lines) {
        const auto j = json::parse(line);
        for (const char* k : {"model", "model_version"}) {
            c.expect(j.contains(k) && j[k].is_string() && !j[k].get<std::string>().empty(), std::string("missing ") + k);
        }
        c.expect(j.contains("temperature") && j["temperature"].is_number(), "missing temperature");
        c.expect(j.contains("timestamp") && j["timestamp"].is_string() &&
                     std::regex_match(j["timestamp"].get<std::string>(), rfc3339),
                 "bad timestamp");
    }
    c.expect(lines == 156, std::to_string(lines) + " log lines");

    Rng rng(424242);
    std::size_t interruptions = 0;
    for (int trial = 0; trial < 3; ++trial) {
        const auto log = dir / ("trial" + std::to_string(trial) + ".jsonl");
        for (int round = 0; round < 100; ++round) {
            harness::CampaignOptions opt;
            opt.stop_after = static_cast<std::size_t>(1 + rng.below(120));
            std::vector<std::shared_ptr<harness::ModelClient>> clients = {
                harness::make_mock_client(harness::oracle_script()), harness::make_mock_client(harness::scanner_script())};
            const auto s = harness::run_campaign(dataset, clients, log, opt);
            if (!s.interrupted) break;
            ++interruptions;
            // A kill in mid-write leaves a partial line behind.
            if (rng.coin()) std::ofstream(log, std::ios::app) << "{\"variant_id\": \"" << rng.below(1000);
        }
        const auto entries = harness::read_campaign_log(log);
        std::set<std::pair<std::string, std::string>> pairs;
        for (const auto& r : entries) pairs.emplace(r.variant_id, r.model_name);
        c.expect(entries.size() == 312, "trial " + std::to_string(trial) + " logged " + std::to_string(entries.size()));
        c.expect(pairs.size() == entries.size(), "trial " + std::to_string(trial) + " has duplicate pairs");
    }
    c.expect(interruptions >= 3, "no interruption happened");
    return c.verdict("156 lines with metadata; 3 trials, " + std::to_string(interruptions) +
                     " interruptions, no duplicate pairs");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"dataset cardinality", dataset_cardinality},
        {"determinism", determinism},
        {"verification pass rate and tamper detection", verification_pass_rate},
        {"concealment invariant", concealment},
        {"crypto correctness", crypto_correctness},
        {"metrics oracle equivalence", metrics_oracle},
        {"normalization robustness", normalization},
        {"hallucination taxonomy", taxonomy},
        {"encryption cliff with the scanner mock", figure2_cliff},
        {"code metrics oracle", code_metrics},
        {"campaign logging contract", campaign_logging},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = Clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << v.detail << ") [" << ms << " ms]" << std::endl;
        failed += !v.pass;
    }
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
