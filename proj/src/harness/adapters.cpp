#include "iocbench/error.hpp"
#include "iocbench/harness/client.hpp"

namespace iocbench::harness {

using nlohmann::json;

std::string default_endpoint(const ModelClientConfig& c) {
    if (!c.endpoint.empty()) return c.endpoint;
    if (c.adapter == "openai") return "https://api.openai.com/v1/chat/completions";
    if (c.adapter == "xai") return "https://api.x.ai/v1/chat/completions";
    if (c.adapter == "anthropic") return "https://api.anthropic.com/v1/messages";
    if (c.adapter == "gemini") {
        return "https://generativelanguage.googleapis.com/v1beta/models/" + c.model_name + ":generateContent";
    }
    if (c.adapter == "cohere") return "https://api.cohere.com/v2/chat";
    throw Error(ErrorCode::ConfigError, "adapter " + c.adapter + " has no HTTP endpoint");
}

HttpRequest build_request(const ModelClientConfig& c, const std::string& credential, const std::string& prompt) {
    HttpRequest r;
    r.url = default_endpoint(c);
    const json user = {{"role", "user"}, {"content", prompt}};
    json body;
    if (c.adapter == "openai" || c.adapter == "xai") {
        r.headers = {{"Authorization", "Bearer " + credential}};
        body = {{"model", c.model_name},
                {"messages", json::array({user})},
                {"temperature", c.temperature},
                {"max_tokens", c.max_output_tokens}};
    } else if (c.adapter == "anthropic") {
        r.headers = {{"x-api-key", credential}, {"anthropic-version", "2023-06-01"}};
        body = {{"model", c.model_name},
                {"messages", json::array({user})},
                {"temperature", c.temperature},
                {"max_tokens", c.max_output_tokens}};
    } else if (c.adapter == "gemini") {
        r.headers = {{"x-goog-api-key", credential}};
        body = {{"contents", json::array({{{"role", "user"}, {"parts", json::array({{{"text", prompt}}})}}})},
                {"generationConfig", {{"temperature", c.temperature}, {"maxOutputTokens", c.max_output_tokens}}}};
    } else if (c.adapter == "cohere") {
        r.headers = {{"Authorization", "Bearer " + credential}};
        body = {{"model", c.model_name},
                {"messages", json::array({user})},
                {"temperature", c.temperature},
                {"max_tokens", c.max_output_tokens}};
    } else {
        throw Error(ErrorCode::ConfigError, "adapter " + c.adapter + " does not speak HTTP");
    }
    r.body = body.dump();
    return r;
}

namespace {

// Concatenates the "text" members of an array of content parts.
std::optional<std::string> join_text(const json& parts) {
    if (!parts.is_array()) return std::nullopt;
    std::string out;
    bool any = false;
    for (const auto& p : parts) {
        if (p.is_object() && p.contains("text") && p["text"].is_string()) {
            out += p["text"].get<std::string>();
            any = true;
        }
    }
    if (!any) return std::nullopt;
    return out;
}

}  // namespace

std::optional<std::string> extract_text(const std::string& adapter, const std::string& body) {
    const json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    if (adapter == "openai" || adapter == "xai") {
        if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) return std::nullopt;
        const json& msg = j["choices"][0].value("message", json::object());
        if (!msg.is_object() || !msg.contains("content")) return std::nullopt;
        if (msg["content"].is_string()) return msg["content"].get<std::string>();
        return join_text(msg["content"]);
    }
    if (adapter == "anthropic") {
        if (!j.contains("content")) return std::nullopt;
        return join_text(j["content"]);
    }
    if (adapter == "gemini") {
        if (!j.contains("candidates") || !j["candidates"].is_array() || j["candidates"].empty()) return std::nullopt;
        const json& cand = j["candidates"][0];
        if (!cand.is_object() || !cand.contains("content") || !cand["content"].is_object()) return std::nullopt;
        return join_text(cand["content"].value("parts", json()));
    }
    if (adapter == "cohere") {
        if (!j.contains("message") || !j["message"].is_object()) return std::nullopt;
        return join_text(j["message"].value("content", json()));
    }
    return std::nullopt;
}

}  // namespace iocbench::harness
