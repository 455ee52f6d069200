#pragma once

#include "iocbench/groundtruth/record.hpp"
#include "iocbench/rng.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iocbench::harness {

struct ModelClientConfig {
    std::string provider_id;
    /// openai, xai, anthropic, gemini, cohere or mock.
    std::string adapter;
    std::string model_name;
    std::string model_version;
    double temperature = 0.0;
    std::uint32_t max_output_tokens = 512;
    /// Empty selects the adapter's public endpoint.
    std::string endpoint;
    /// Environment variable holding the key. Empty means IOCBENCH_API_KEY_<PROVIDER_ID>.
    std::string credential_ref;
    /// Requests per minute; 0 disables limiting.
    double rate_limit = 60.0;
    std::uint32_t max_retries = 5;
    /// Seconds; attempt k waits base * 2^k, jittered down by up to half.
    double backoff_base = 1.0;
    std::uint32_t concurrency = 1;
    double timeout_seconds = 120.0;

    /// Name of the environment variable that holds the credential.
    std::string credential_env() const;
};

/// Holds the variable name only, never a credential value.
nlohmann::json config_to_json(const ModelClientConfig& c);
/// Unknown fields throw Error(ConfigError).
ModelClientConfig config_from_json(const nlohmann::json& j);
/// {"providers": [config, ...]}.
std::vector<ModelClientConfig> load_provider_configs(const std::filesystem::path& path);

struct QueryRequest {
    std::string variant_id;
    /// Content digest of the variant file.
    std::string variant_digest;
    std::string phase;
    std::string variant_text;
    std::string prompt;
    /// Ground truth, for scripted mocks only.
    const groundtruth::VariantRecord* record = nullptr;
};

inline constexpr std::string_view kExhaustedRetries = "EXHAUSTED_RETRIES";
inline constexpr std::string_view kHttpError = "HTTP_ERROR";

struct RawResponse {
    std::string variant_id;
    std::string variant_digest;
    std::string phase;
    std::string provider_id;
    std::string model_name;
    std::string model_version;
    double temperature = 0.0;
    /// UTC, RFC 3339.
    std::string timestamp;
    std::string prompt_digest;
    std::uint32_t attempt_count = 0;
    std::optional<int> http_status;
    std::optional<std::string> transport_error;
    /// EXHAUSTED_RETRIES, HTTP_ERROR or none.
    std::optional<std::string> error;
    /// Model output text, or the raw body when it could not be unwrapped.
    std::string body_text;

    bool operator==(const RawResponse&) const = default;
};

nlohmann::json response_to_json(const RawResponse& r);
/// Strict; throws Error(SchemaError).
RawResponse response_from_json(const nlohmann::json& j);

std::string rfc3339(std::chrono::system_clock::time_point t);

using Sleeper = std::function<void(std::chrono::milliseconds)>;
using WallClock = std::function<std::chrono::system_clock::time_point()>;
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

Sleeper real_sleeper();
WallClock system_wall_clock();
EnvLookup process_env();

class ModelClient {
public:
    virtual ~ModelClient() = default;
    virtual const ModelClientConfig& config() const = 0;
    /// Throws Error(AuthError) when a needed credential is absent.
    virtual void check_credentials() const {}
    /// Throws Error(AuthError) on a missing or rejected credential. Every
    /// other outcome, including exhausted retries, comes back as a response.
    virtual RawResponse query(const QueryRequest& request) = 0;
};

struct HttpRequest {
    std::string url;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
};

struct HttpReply {
    int status = 0;
    std::string body;
};

/// Connection-level failure: no HTTP status was received.
class TransportFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual HttpReply post(const HttpRequest& request, std::chrono::milliseconds timeout) = 0;
};

/// HTTPS/HTTP transport over cpp-httplib.
std::shared_ptr<Transport> make_http_transport();

std::string default_endpoint(const ModelClientConfig& c);
/// The vendor's chat request for one user prompt.
HttpRequest build_request(const ModelClientConfig& c, const std::string& credential, const std::string& prompt);
/// Model text from a successful vendor reply, or none when the shape is unexpected.
std::optional<std::string> extract_text(const std::string& adapter, const std::string& body);

/// Throttling and transient server statuses.
bool retryable_status(int status);
/// base * 2^attempt seconds, scaled by a factor in [0.5, 1).
std::chrono::milliseconds backoff_delay(double base_seconds, unsigned attempt, Rng& rng);

/// Spaces requests at least 60/rate seconds apart. Thread-safe.
class RateLimiter {
public:
    using SteadyClock = std::function<std::chrono::steady_clock::time_point()>;

    RateLimiter(double per_minute, Sleeper sleeper, SteadyClock clock = {});
    void acquire();

private:
    std::chrono::nanoseconds interval_{0};
    Sleeper sleeper_;
    SteadyClock clock_;
    std::mutex mutex_;
    std::optional<std::chrono::steady_clock::time_point> next_;
};

class HttpModelClient : public ModelClient {
public:
    struct Deps {
        std::shared_ptr<Transport> transport;
        Sleeper sleeper;
        WallClock clock;
        EnvLookup env;
    };

    HttpModelClient(ModelClientConfig config, Deps deps);

    const ModelClientConfig& config() const override { return config_; }
    void check_credentials() const override;
    RawResponse query(const QueryRequest& request) override;

private:
    ModelClientConfig config_;
    Deps deps_;
    RateLimiter limiter_;

    std::string credential() const;
};

/// HttpModelClient with the real transport, sleeper, clock and environment.
std::unique_ptr<ModelClient> make_http_client(const ModelClientConfig& config);

}  // namespace iocbench::harness
