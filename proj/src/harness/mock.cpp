#include "iocbench/harness/mock.hpp"

#include "iocbench/crypto/codec.hpp"
#include "iocbench/digest.hpp"
#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/ioc/ioc.hpp"
#include "iocbench/json_util.hpp"
#include "iocbench/jsource/parser.hpp"

#include <filesystem>

namespace iocbench::harness {

using nlohmann::json;

namespace {

std::string answer(std::string_view decision, std::string_view value) {
    return json{{"answer", decision}, {"ioc", value}}.dump();
}

std::string expand(std::string body, const QueryRequest& q) {
    const std::string slot = "{{ioc}}";
    const std::string value = q.record != nullptr ? q.record->ioc_canonical : std::string();
    for (auto at = body.find(slot); at != std::string::npos; at = body.find(slot, at + value.size())) {
        body.replace(at, slot.size(), value);
    }
    return body;
}

class MockClient : public ModelClient {
public:
    MockClient(MockScript script, WallClock clock) : script_(std::move(script)), clock_(std::move(clock)) {
        if (!clock_) clock_ = system_wall_clock();
        config_.provider_id = "mock";
        config_.adapter = "mock";
        config_.model_name = "mock-" + script_.name;
        config_.model_version = "1.0.0";
        config_.rate_limit = 0;
        config_.max_retries = 0;
    }

    const ModelClientConfig& config() const override { return config_; }

    RawResponse query(const QueryRequest& q) override {
        RawResponse r;
        r.variant_id = q.variant_id;
        r.variant_digest = q.variant_digest;
        r.phase = q.phase;
        r.provider_id = config_.provider_id;
        r.model_name = config_.model_name;
        r.model_version = config_.model_version;
        r.temperature = config_.temperature;
        r.timestamp = rfc3339(clock_());
        r.prompt_digest = sha256_hex(q.prompt);
        r.attempt_count = 1;
        r.http_status = 200;
        r.body_text = respond(q);
        return r;
    }

private:
    MockScript script_;
    WallClock clock_;
    ModelClientConfig config_;

    std::string respond(const QueryRequest& q) const {
        if (script_.compute) return script_.compute(q);
        for (const auto& rule : script_.rules) {
            const bool phase_ok =
                rule.phases.empty() || std::find(rule.phases.begin(), rule.phases.end(), q.phase) != rule.phases.end();
            const bool text_ok = !rule.contains || q.variant_text.find(*rule.contains) != std::string::npos;
            if (phase_ok && text_ok) return expand(rule.body, q);
        }
        return expand(script_.default_body, q);
    }
};

}  // namespace

MockScript oracle_script() {
    MockScript s;
    s.name = "oracle";
    s.default_body = answer("DON'T KNOW", "");
    s.compute = [](const QueryRequest& q) {
        if (q.record == nullptr) return answer("DON'T KNOW", "");
        return answer("YES", q.record->ioc_canonical);
    };
    return s;
}

std::optional<std::string> scan_plaintext_ioc(std::string_view source) {
    std::vector<js::Token> tokens;
    try {
        tokens = js::tokenize(source);
    } catch (const Error&) {
        return std::nullopt;
    }
    for (const auto& t : tokens) {
        if (t.kind != js::TokenKind::String) continue;
        std::string value;
        try {
            value = js::cook_string_literal(t.text);
        } catch (const Error&) {
            continue;
        }
        if (auto ip = ioc::validate_ipv4(value); ip && ip->canonical() == value) return value;
        try {
            const std::string decoded = crypto::to_string(crypto::base64_decode(value));
            if (auto ip = ioc::validate_ipv4(decoded); ip && ip->canonical() == decoded) return decoded;
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

MockScript scanner_script() {
    MockScript s;
    s.name = "scanner";
    s.default_body = answer("NO", "");
    s.compute = [](const QueryRequest& q) {
        const auto found = scan_plaintext_ioc(q.variant_text);
        return found ? answer("YES", *found) : answer("NO", "");
    };
    return s;
}

MockScript dont_know_script() {
    MockScript s;
    s.name = "dont-know";
    s.default_body = answer("DON'T KNOW", "");
    s.compute = [](const QueryRequest&) { return answer("DON'T KNOW", ""); };
    return s;
}

MockScript mock_script_from_json(const json& j) {
    try {
        if (!j.is_object()) throw Error(ErrorCode::ConfigError, "mock script is not an object");
        std::vector<std::string> keys = {"default"};
        MockScript s;
        s.name = "script";
        if (j.contains("name")) {
            keys.emplace_back("name");
            s.name = get_string(j, "name");
        }
        if (j.contains("rules")) {
            keys.emplace_back("rules");
            if (!j["rules"].is_array()) throw Error(ErrorCode::ConfigError, "rules must be an array");
            for (const auto& r : j["rules"]) {
                std::vector<std::string> rule_keys = {"body"};
                MockRule rule;
                rule.body = get_string(r, "body");
                if (r.contains("phases")) {
                    rule_keys.emplace_back("phases");
                    rule.phases = get_strings(r, "phases");
                }
                if (r.contains("contains")) {
                    rule_keys.emplace_back("contains");
                    rule.contains = get_string(r, "contains");
                }
                expect_keys(r, rule_keys, "mock rule");
                s.rules.push_back(std::move(rule));
            }
        }
        s.default_body = get_string(j, "default");
        expect_keys(j, keys, "mock script");
        return s;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        throw Error(ErrorCode::ConfigError, e.what());
    }
}

MockScript load_mock_script(const std::string& name_or_path) {
    if (name_or_path == "oracle") return oracle_script();
    if (name_or_path == "scanner") return scanner_script();
    if (name_or_path == "dont-know") return dont_know_script();
    if (!std::filesystem::exists(name_or_path)) {
        throw Error(ErrorCode::ConfigError, "unknown mock script " + name_or_path);
    }
    json j;
    try {
        j = parse_json(read_file(name_or_path), name_or_path);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::IoError) throw;
        throw Error(ErrorCode::ConfigError, e.what());
    }
    return mock_script_from_json(j);
}

std::unique_ptr<ModelClient> make_mock_client(MockScript script, WallClock clock) {
    return std::make_unique<MockClient>(std::move(script), std::move(clock));
}

}  // namespace iocbench::harness
