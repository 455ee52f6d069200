#include "iocbench/scoring/normalize.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <utility>
#include <vector>

namespace iocbench::scoring {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxCandidates = 64;
constexpr int kMaxNesting = 8;

// (open, close) offsets of balanced brace pairs, ordered by open offset.
// Quotes are only honoured inside braces, so prose apostrophes and stray
// quotes before the object do not derail the scan.
std::vector<std::pair<std::size_t, std::size_t>> brace_pairs(std::string_view s) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> open;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '{') {
            open.push_back(i);
        } else if (c == '}' && !open.empty()) {
            pairs.emplace_back(open.back(), i);
            open.pop_back();
        } else if (c == '"' && !open.empty()) {
            in_string = true;
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

const json* field(const json& obj, std::initializer_list<std::string_view> names) {
    for (const auto& [k, v] : obj.items()) {
        const auto key = lower(k);
        for (const auto n : names) {
            if (key == n) return &v;
        }
    }
    return nullptr;
}

// The object holding the decision: obj itself or the first nested one.
const json* decision_object(const json& obj, int depth) {
    if (field(obj, {"answer", "decision"})) return &obj;
    if (depth >= kMaxNesting) return nullptr;
    for (const auto& [k, v] : obj.items()) {
        if (v.is_object()) {
            if (const auto* found = decision_object(v, depth + 1)) return found;
        }
    }
    return nullptr;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n\f\v");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n\f\v");
    return s.substr(b, e - b + 1);
}

std::string fold_decision(std::string_view raw) {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto c = static_cast<unsigned char>(raw[i]);
        // U+2018, U+2019 and U+02BC.
        if (c == 0xE2 && i + 2 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0x80 &&
            (static_cast<unsigned char>(raw[i + 2]) == 0x98 || static_cast<unsigned char>(raw[i + 2]) == 0x99)) {
            i += 2;
            continue;
        }
        if (c == 0xCA && i + 1 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0xBC) {
            ++i;
            continue;
        }
        if (c == '\'' || c == '`') continue;
        if (c == '_' || c == '-' || std::isspace(c)) {
            if (!out.empty() && out.back() != ' ') out += ' ';
            continue;
        }
        out += static_cast<char>(std::toupper(c));
    }
    while (!out.empty() && (out.back() == ' ' || out.back() == '.' || out.back() == '!')) out.pop_back();
    return out;
}

Decision decision_from(std::string_view raw) {
    const auto folded = fold_decision(raw);
    if (folded == "YES") return Decision::Yes;
    if (folded == "NO") return Decision::No;
    if (folded == "DONT KNOW" || folded == "DONTKNOW" || folded == "DO NOT KNOW") return Decision::DontKnow;
    return Decision::Invalid;
}

NormalizedAnswer invalid(std::string note) {
    NormalizedAnswer a;
    a.extraction_note = std::move(note);
    return a;
}

NormalizedAnswer normalize_impl(std::string_view body) {
    const auto pairs = brace_pairs(body);
    if (pairs.empty()) return invalid("no JSON object");
    std::size_t tried = 0;
    bool saw_object = false;
    for (const auto& [open, close] : pairs) {
        if (++tried > kMaxCandidates) break;
        const auto parsed = json::parse(body.substr(open, close - open + 1), nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object()) continue;
        saw_object = true;
        const json* obj = decision_object(parsed, 0);
        if (!obj) continue;

        const json& d = *field(*obj, {"answer", "decision"});
        if (!d.is_string()) return invalid("answer field is not a string");
        NormalizedAnswer a;
        a.decision = decision_from(d.get<std::string>());
        if (a.decision == Decision::Invalid) return invalid("unrecognized answer: " + d.get<std::string>());
        a.extraction_note = "json object at offset " + std::to_string(open);
        if (a.decision == Decision::Yes) {
            const json* v = field(*obj, {"ioc", "value"});
            if (v && v->is_string()) {
                const auto t = trim(v->get_ref<const std::string&>());
                if (!t.empty()) {
                    a.value = std::string(t);
                    a.value_class = ioc::classify_artifact(t);
                }
            }
            if (!a.value) a.extraction_note += "; YES without a value";
        }
        return a;
    }
    return invalid(saw_object ? "no answer field" : "no parseable JSON object");
}

}  // namespace

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::Yes: return "YES";
        case Decision::No: return "NO";
        case Decision::DontKnow: return "DONT_KNOW";
        case Decision::Invalid: return "INVALID";
    }
    return "INVALID";
}

NormalizedAnswer normalize_response(std::string_view body) noexcept {
    try {
        return normalize_impl(body);
    } catch (...) {
        NormalizedAnswer a;
        a.extraction_note = "internal error";
        return a;
    }
}

}  // namespace iocbench::scoring
