#include "iocbench/harness/client.hpp"

#include "iocbench/digest.hpp"
#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/json_util.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <thread>

namespace iocbench::harness {

using nlohmann::json;

std::string ModelClientConfig::credential_env() const {
    if (!credential_ref.empty()) return credential_ref;
    std::string id;
    for (char c : provider_id) {
        id += std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : '_';
    }
    return "IOCBENCH_API_KEY_" + id;
}

json config_to_json(const ModelClientConfig& c) {
    return {{"provider_id", c.provider_id},
            {"adapter", c.adapter},
            {"model_name", c.model_name},
            {"model_version", c.model_version},
            {"temperature", c.temperature},
            {"max_output_tokens", c.max_output_tokens},
            {"endpoint", c.endpoint},
            {"credential_ref", c.credential_env()},
            {"rate_limit", c.rate_limit},
            {"max_retries", c.max_retries},
            {"backoff_base", c.backoff_base},
            {"concurrency", c.concurrency},
            {"timeout_seconds", c.timeout_seconds}};
}

namespace {

[[noreturn]] void config_error(const std::string& m) { throw Error(ErrorCode::ConfigError, m); }

const std::vector<std::string> kAdapters = {"openai", "xai", "anthropic", "gemini", "cohere", "mock"};

}  // namespace

ModelClientConfig config_from_json(const json& j) {
    static const std::vector<std::string> known = {
        "provider_id", "adapter",    "model_name",  "model_version", "temperature", "max_output_tokens", "endpoint",
        "credential_ref", "rate_limit", "max_retries", "backoff_base", "concurrency", "timeout_seconds"};
    if (!j.is_object()) config_error("provider config is not an object");
    for (const auto& [k, v] : j.items()) {
        if (std::find(known.begin(), known.end(), k) == known.end()) config_error("unknown provider field " + k);
    }
    ModelClientConfig c;
    try {
        c.provider_id = get_string(j, "provider_id");
        c.adapter = get_string(j, "adapter");
        c.model_name = get_string(j, "model_name");
        c.model_version = get_string(j, "model_version");
        if (j.contains("temperature")) c.temperature = get_number(j, "temperature");
        if (j.contains("max_output_tokens")) c.max_output_tokens = static_cast<std::uint32_t>(get_u64(j, "max_output_tokens"));
        if (j.contains("endpoint")) c.endpoint = get_string(j, "endpoint");
        if (j.contains("credential_ref")) c.credential_ref = get_string(j, "credential_ref");
        if (j.contains("rate_limit")) c.rate_limit = get_number(j, "rate_limit");
        if (j.contains("max_retries")) c.max_retries = static_cast<std::uint32_t>(get_u64(j, "max_retries"));
        if (j.contains("backoff_base")) c.backoff_base = get_number(j, "backoff_base");
        if (j.contains("concurrency")) c.concurrency = static_cast<std::uint32_t>(get_u64(j, "concurrency"));
        if (j.contains("timeout_seconds")) c.timeout_seconds = get_number(j, "timeout_seconds");
    } catch (const Error& e) {
        config_error(e.what());
    }
    if (std::find(kAdapters.begin(), kAdapters.end(), c.adapter) == kAdapters.end()) {
        config_error("unknown adapter " + c.adapter);
    }
    if (c.provider_id.empty() || c.model_name.empty()) config_error("provider_id and model_name are required");
    if (c.rate_limit < 0 || c.backoff_base < 0 || c.timeout_seconds <= 0) config_error("negative rate, backoff or timeout");
    if (c.concurrency == 0) config_error("concurrency must be at least 1");
    return c;
}

std::vector<ModelClientConfig> load_provider_configs(const std::filesystem::path& path) {
    json j;
    try {
        j = parse_json(read_file(path), path.string());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::IoError) throw;
        config_error(e.what());
    }
    if (!j.is_object() || j.size() != 1 || !j.contains("providers") || !j["providers"].is_array()) {
        config_error(path.string() + ": expected {\"providers\": [...]}");
    }
    std::vector<ModelClientConfig> out;
    for (const auto& p : j["providers"]) out.push_back(config_from_json(p));
    if (out.empty()) config_error(path.string() + ": no providers");
    return out;
}

json response_to_json(const RawResponse& r) {
    auto opt = [](const auto& v) -> json { return v ? json(*v) : json(nullptr); };
    return {{"variant_id", r.variant_id},
            {"variant_digest", r.variant_digest},
            {"phase", r.phase},
            {"provider_id", r.provider_id},
            {"model", r.model_name},
            {"model_version", r.model_version},
            {"temperature", r.temperature},
            {"timestamp", r.timestamp},
            {"prompt_digest", r.prompt_digest},
            {"attempt_count", r.attempt_count},
            {"http_status", opt(r.http_status)},
            {"transport_error", opt(r.transport_error)},
            {"error", opt(r.error)},
            {"body_text", r.body_text}};
}

RawResponse response_from_json(const json& j) {
    expect_keys(j,
                {"variant_id", "variant_digest", "phase", "provider_id", "model", "model_version", "temperature",
                 "timestamp", "prompt_digest", "attempt_count", "http_status", "transport_error", "error", "body_text"},
                "response");
    RawResponse r;
    r.variant_id = get_string(j, "variant_id");
    r.variant_digest = get_string(j, "variant_digest");
    r.phase = get_string(j, "phase");
    r.provider_id = get_string(j, "provider_id");
    r.model_name = get_string(j, "model");
    r.model_version = get_string(j, "model_version");
    r.temperature = get_number(j, "temperature");
    r.timestamp = get_string(j, "timestamp");
    r.prompt_digest = get_string(j, "prompt_digest");
    r.attempt_count = static_cast<std::uint32_t>(get_u64(j, "attempt_count"));
    if (!j["http_status"].is_null()) r.http_status = static_cast<int>(get_i64(j, "http_status"));
    if (!j["transport_error"].is_null()) r.transport_error = get_string(j, "transport_error");
    if (!j["error"].is_null()) r.error = get_string(j, "error");
    r.body_text = get_string(j, "body_text");
    return r;
}

std::string rfc3339(std::chrono::system_clock::time_point t) {
    const auto secs = std::chrono::time_point_cast<std::chrono::seconds>(t);
    const auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(t - secs).count();
    const std::time_t tt = std::chrono::system_clock::to_time_t(secs);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                  tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(millis));
    return buf;
}

Sleeper real_sleeper() {
    return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

WallClock system_wall_clock() {
    return [] { return std::chrono::system_clock::now(); };
}

EnvLookup process_env() {
    return [](const std::string& name) -> std::optional<std::string> {
        const char* v = std::getenv(name.c_str());
        if (v == nullptr) return std::nullopt;
        return std::string(v);
    };
}

bool retryable_status(int status) {
    return status == 408 || status == 429 || status == 500 || status == 502 || status == 503 || status == 504;
}

std::chrono::milliseconds backoff_delay(double base_seconds, unsigned attempt, Rng& rng) {
    const double factor = 0.5 + 0.5 * static_cast<double>(rng.below(1000)) / 1000.0;
    const double ms = base_seconds * 1000.0 * std::ldexp(1.0, static_cast<int>(std::min(attempt, 20U))) * factor;
    return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

RateLimiter::RateLimiter(double per_minute, Sleeper sleeper, SteadyClock clock)
    : sleeper_(std::move(sleeper)), clock_(std::move(clock)) {
    if (per_minute > 0) {
        interval_ = std::chrono::nanoseconds(static_cast<std::int64_t>(60e9 / per_minute));
    }
    if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
}

void RateLimiter::acquire() {
    if (interval_.count() == 0) return;
    std::chrono::nanoseconds wait{0};
    {
        std::lock_guard lock(mutex_);
        const auto now = clock_();
        const auto slot = next_ && *next_ > now ? *next_ : now;
        next_ = slot + interval_;
        wait = slot - now;
    }
    if (wait.count() > 0) sleeper_(std::chrono::ceil<std::chrono::milliseconds>(wait));
}

namespace {

HttpModelClient::Deps with_defaults(HttpModelClient::Deps deps) {
    if (!deps.transport) throw Error(ErrorCode::ConfigError, "HTTP client without transport");
    if (!deps.sleeper) deps.sleeper = real_sleeper();
    if (!deps.clock) deps.clock = system_wall_clock();
    if (!deps.env) deps.env = process_env();
    return deps;
}

}  // namespace

HttpModelClient::HttpModelClient(ModelClientConfig config, Deps deps)
    : config_(std::move(config)), deps_(with_defaults(std::move(deps))), limiter_(config_.rate_limit, deps_.sleeper) {}

std::string HttpModelClient::credential() const {
    const auto v = deps_.env(config_.credential_env());
    if (!v || v->empty()) {
        throw Error(ErrorCode::AuthError, "credential variable " + config_.credential_env() + " is not set for provider " +
                                              config_.provider_id);
    }
    return *v;
}

void HttpModelClient::check_credentials() const { credential(); }

namespace {

std::string redact(std::string text, const std::string& secret) {
    if (secret.empty()) return text;
    static const std::string mask = "[REDACTED]";
    for (auto at = text.find(secret); at != std::string::npos; at = text.find(secret, at + mask.size())) {
        text.replace(at, secret.size(), mask);
    }
    return text;
}

}  // namespace

RawResponse HttpModelClient::query(const QueryRequest& request) {
    const std::string key = credential();
    RawResponse r;
    r.variant_id = request.variant_id;
    r.variant_digest = request.variant_digest;
    r.phase = request.phase;
    r.provider_id = config_.provider_id;
    r.model_name = config_.model_name;
    r.model_version = config_.model_version;
    r.temperature = config_.temperature;
    r.prompt_digest = sha256_hex(request.prompt);

    const HttpRequest http = build_request(config_, key, request.prompt);
    const auto timeout = std::chrono::milliseconds(static_cast<std::int64_t>(config_.timeout_seconds * 1000));
    const std::string jitter_key = request.variant_id + "\n" + config_.model_name;
    const auto jitter_seed =
        sha256({reinterpret_cast<const std::uint8_t*>(jitter_key.data()), jitter_key.size()});
    std::uint64_t seed = 0;
    for (int i = 0; i < 8; ++i) seed = (seed << 8) | jitter_seed[static_cast<std::size_t>(i)];
    Rng jitter(seed);

    for (unsigned attempt = 0;; ++attempt) {
        limiter_.acquire();
        r.attempt_count = attempt + 1;
        r.timestamp = rfc3339(deps_.clock());
        bool retry = false;
        try {
            const HttpReply reply = deps_.transport->post(http, timeout);
            r.http_status = reply.status;
            r.transport_error.reset();
            if (reply.status == 401 || reply.status == 403) {
                throw Error(ErrorCode::AuthError, "provider " + config_.provider_id + " rejected the credential (HTTP " +
                                                      std::to_string(reply.status) + ")");
            }
            if (reply.status >= 200 && reply.status < 300) {
                const auto text = extract_text(config_.adapter, reply.body);
                r.body_text = redact(text ? *text : reply.body, key);
                r.error.reset();
                return r;
            }
            r.body_text = redact(reply.body, key);
            if (!retryable_status(reply.status)) {
                r.error = std::string(kHttpError);
                return r;
            }
            retry = true;
        } catch (const TransportFailure& e) {
            r.http_status.reset();
            r.transport_error = redact(e.what(), key);
            r.body_text.clear();
            retry = true;
        }
        if (retry && attempt >= config_.max_retries) {
            r.error = std::string(kExhaustedRetries);
            return r;
        }
        deps_.sleeper(backoff_delay(config_.backoff_base, attempt, jitter));
    }
}

std::unique_ptr<ModelClient> make_http_client(const ModelClientConfig& config) {
    return std::make_unique<HttpModelClient>(config,
                                             HttpModelClient::Deps{make_http_transport(), real_sleeper(), system_wall_clock(), process_env()});
}

}  // namespace iocbench::harness
