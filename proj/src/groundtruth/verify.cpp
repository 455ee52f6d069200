#include "iocbench/groundtruth/verify.hpp"

#include "iocbench/crypto/cipher.hpp"
#include "iocbench/crypto/codec.hpp"
#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/jsource/emitter.hpp"
#include "iocbench/jsource/parser.hpp"
#include "iocbench/process.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>

namespace iocbench::groundtruth {

using js::Node;
using js::NodeKind;

std::string_view to_string(CheckKind c) {
    switch (c) {
        case CheckKind::Syntactic: return "syntactic";
        case CheckKind::GroundTruth: return "ground_truth";
        case CheckKind::Behavioral: return "behavioral";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Skipped: return "skipped";
    }
    return "?";
}

nlohmann::json check_to_json(const std::string& variant_id, const CheckResult& r) {
    return {{"variant_id", variant_id},
            {"check", to_string(r.check)},
            {"verdict", to_string(r.verdict)},
            {"detail", r.detail}};
}

CheckResult verify_syntactic(std::string_view variant_text) {
    try {
        js::parse_source(variant_text);
        return {CheckKind::Syntactic, Verdict::Pass, "parsed"};
    } catch (const Error& e) {
        return {CheckKind::Syntactic, Verdict::Fail, e.what()};
    }
}

namespace {

// Top-level functions and variables, walked without entering function bodies
// except for var declarations that flattening may have moved into cases.
class ConstantIndex {
public:
    explicit ConstantIndex(const Node& root) {
        for (const auto& s : root.kids) {
            if (s.is(NodeKind::FunctionDecl)) functions_.emplace(s.kids[0].text, &s);
        }
        js::walk(root, [&](const Node& n) {
            if (js::is_function_like(n)) return false;
            if (n.is(NodeKind::VarDeclarator) && !n.kids[1].none()) {
                auto [it, fresh] = vars_.emplace(n.kids[0].text, &n.kids[1]);
                if (!fresh) it->second = nullptr;  // ambiguous
            }
            return true;
        });
    }

    const Node* function(const std::string& name) const {
        auto it = functions_.find(name);
        return it == functions_.end() ? nullptr : it->second;
    }

    const Node* var_init(const std::string& name) const {
        auto it = vars_.find(name);
        return it == vars_.end() ? nullptr : it->second;
    }

    // Follows `function w(...a) { return g(...a); }` chains.
    const Node* resolve_callee(const Node& callee) const {
        if (!callee.is(NodeKind::Identifier)) return nullptr;
        const Node* fn = function(callee.text);
        for (int hops = 0; fn != nullptr && hops < 8; ++hops) {
            const std::string* next = forward_target(*fn);
            if (next == nullptr) return fn;
            fn = function(*next);
        }
        return nullptr;
    }

    std::optional<std::string> resolve_string(const Node& n, int depth = 0) const {
        if (depth > 8) return std::nullopt;
        if (n.is(NodeKind::StringLit)) return n.text;
        if (n.is(NodeKind::Identifier)) {
            const Node* init = var_init(n.text);
            if (init == nullptr) return std::nullopt;
            return resolve_string(*init, depth + 1);
        }
        if (n.is(NodeKind::Call) && n.kids.size() == 2 && n.kids[0].is(NodeKind::Identifier) &&
            n.kids[1].is(NodeKind::NumberLit)) {
            const Node* fn = function(n.kids[0].text);
            if (fn == nullptr) return std::nullopt;
            const Node* element = accessor_element(*fn, n.kids[1].text, depth);
            if (element == nullptr) return std::nullopt;
            return resolve_string(*element, depth + 1);
        }
        return std::nullopt;
    }

private:
    std::map<std::string, const Node*> functions_;
    std::map<std::string, const Node*> vars_;

    static const std::string* forward_target(const Node& fn) {
        const Node& params = fn.kids[1];
        const Node& body = fn.kids[2];
        if (params.kids.size() != 1 || !params.kids[0].is(NodeKind::RestElement)) return nullptr;
        if (body.kids.size() != 1 || !body.kids[0].is(NodeKind::Return)) return nullptr;
        const Node& call = body.kids[0].kids[0];
        if (!call.is(NodeKind::Call) || call.kids.size() != 2 || !call.kids[0].is(NodeKind::Identifier)) return nullptr;
        const Node& spread = call.kids[1];
        if (!spread.is(NodeKind::Spread) || !spread.kids[0].is(NodeKind::Identifier) ||
            spread.kids[0].text != params.kids[0].kids[0].text) {
            return nullptr;
        }
        return &call.kids[0].text;
    }

    static std::optional<std::uint64_t> integer(const Node& n) {
        if (!n.is(NodeKind::NumberLit) || n.text.empty() || n.text.size() > 15) return std::nullopt;
        if (!std::all_of(n.text.begin(), n.text.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
        return std::stoull(n.text);
    }

    // function a(i) { return arr[(i + K) % N]; }
    const Node* accessor_element(const Node& fn, const std::string& raw_index, int depth) const {
        const Node& params = fn.kids[1];
        const Node& body = fn.kids[2];
        if (params.kids.size() != 1 || !params.kids[0].is(NodeKind::Identifier)) return nullptr;
        if (body.kids.size() != 1 || !body.kids[0].is(NodeKind::Return)) return nullptr;
        const Node& m = body.kids[0].kids[0];
        if (!m.is(NodeKind::Member) || !m.has(js::flag::kComputed) || !m.kids[0].is(NodeKind::Identifier)) return nullptr;
        const Node& mod = m.kids[1];
        if (!mod.is(NodeKind::Binary) || mod.text != "%") return nullptr;
        const Node& sum = mod.kids[0];
        if (!sum.is(NodeKind::Binary) || sum.text != "+" || !sum.kids[0].is(NodeKind::Identifier) ||
            sum.kids[0].text != params.kids[0].text) {
            return nullptr;
        }
        const auto k = integer(sum.kids[1]);
        const auto n = integer(mod.kids[1]);
        const auto i = integer(Node(NodeKind::NumberLit, raw_index));
        if (!k || !n || !i || *n == 0) return nullptr;
        const Node* arr = var_init(m.kids[0].text);
        if (arr == nullptr || depth > 8 || !arr->is(NodeKind::ArrayLit) || arr->kids.size() != *n) return nullptr;
        return &arr->kids[(*i + *k) % *n];
    }
};

bool has_prop_name(const Node& fn, std::string_view name) {
    bool found = false;
    js::walk(fn, [&](const Node& n) {
        found = found || (n.is(NodeKind::PropName) && n.text == name);
        return !found;
    });
    return found;
}

CheckResult fail(std::string detail) { return {CheckKind::GroundTruth, Verdict::Fail, std::move(detail)}; }
CheckResult pass(std::string detail) { return {CheckKind::GroundTruth, Verdict::Pass, std::move(detail)}; }

std::size_t count_literals(const Node& root, const std::string& value) {
    std::size_t n = 0;
    js::walk(root, [&](const Node& node) {
        if (node.is(NodeKind::StringLit) && node.text == value) ++n;
        return true;
    });
    return n;
}

std::optional<std::string> decrypt(const ExtractedConstants& c, bool aes) {
    try {
        const auto payload = crypto::hex_decode(c.ciphertext_hex);
        const auto key = crypto::hex_decode(c.key_hex);
        if (!aes) return crypto::to_string(crypto::xor_bytes(payload, key));
        crypto::AesMaterial m;
        const auto iv = crypto::hex_decode(*c.iv_hex);
        if (key.size() != m.key.size() || iv.size() != m.iv.size()) return std::nullopt;
        std::copy(key.begin(), key.end(), m.key.begin());
        std::copy(iv.begin(), iv.end(), m.iv.begin());
        return crypto::to_string(crypto::aes256_decrypt(payload, m));
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<ExtractedConstants> extract_decryptor_constants(const js::Ast& ast, bool aes) {
    const ConstantIndex index(ast.root);
    const std::size_t arity = aes ? 3 : 2;
    const std::string_view marker = aes ? "createDecipheriv" : "fromCharCode";
    std::vector<ExtractedConstants> found;
    js::walk(ast.root, [&](const Node& n) {
        if (!n.is(NodeKind::Call) || n.kids.size() != arity + 1) return true;
        const Node* fn = index.resolve_callee(n.kids[0]);
        if (fn == nullptr || fn->kids[1].kids.size() != arity || !has_prop_name(*fn, marker)) return true;
        std::vector<std::string> args;
        for (std::size_t i = 1; i < n.kids.size(); ++i) {
            auto s = index.resolve_string(n.kids[i]);
            if (!s || !crypto::is_hex(*s)) return true;
            args.push_back(*s);
        }
        ExtractedConstants c{args[0], args[1], std::nullopt, &n};
        if (aes) c.iv_hex = args[2];
        found.push_back(std::move(c));
        return true;
    });
    return found;
}

CheckResult verify_ground_truth(std::string_view variant_text, const VariantRecord& record) {
    js::Ast ast;
    try {
        ast = js::parse_source(variant_text);
    } catch (const Error& e) {
        return fail(std::string("unparseable: ") + e.what());
    }
    const std::string& canonical = record.ioc_canonical;
    if (record.encoding == "plain") {
        const std::size_t n = count_literals(ast.root, canonical);
        if (n == 1) return pass("plaintext literal found once");
        return fail("plaintext literal found " + std::to_string(n) + " times");
    }
    if (record.encoding == "base64") {
        std::size_t decoded = 0;
        js::walk(static_cast<const Node&>(ast.root), [&](const Node& n) {
            if (!n.is(NodeKind::StringLit)) return true;
            try {
                if (crypto::to_string(crypto::base64_decode(n.text)) == canonical) ++decoded;
            } catch (const Error&) {
            }
            return true;
        });
        if (decoded > 0) return pass("base64 literal decodes to the indicator");
        return fail("no string literal decodes to " + canonical);
    }
    const bool aes = record.encoding == "aes-256-cbc";
    if (!aes && record.encoding != "xor") return fail("unknown encoding " + record.encoding);
    const auto candidates = extract_decryptor_constants(ast, aes);
    if (candidates.empty()) return fail("no decryptor call with constant arguments found");
    for (const auto& c : candidates) {
        if (c.ciphertext_hex != record.ciphertext_hex || c.key_hex != record.key_hex || c.iv_hex != record.iv_hex) {
            continue;
        }
        const auto plain = decrypt(c, aes);
        if (plain && *plain == canonical) return pass("decryptor constants match the record and decrypt to the indicator");
        return fail("decryptor constants match the record but decrypt to something else");
    }
    return fail("no decryptor call carries the recorded constants");
}

namespace {

const std::string kProbePrefix = "__IOCBENCH_PROBE__";

std::filesystem::path scratch_file(const std::string& tag) {
    static std::mt19937_64 gen(std::random_device{}());
    auto dir = std::filesystem::temp_directory_path() / "iocbench-behavioral";
    std::filesystem::create_directories(dir);
    return dir / (tag + "-" + std::to_string(gen()) + ".js");
}

ProcessResult run_script(const std::vector<std::string>& command, const std::string& text, const std::string& tag) {
    const auto path = scratch_file(tag);
    write_file(path, text);
    auto argv = command;
    argv.push_back(path.string());
    try {
        auto r = run_process(argv);
        std::filesystem::remove(path);
        return r;
    } catch (...) {
        std::filesystem::remove(path);
        throw;
    }
}

CheckResult behavioral(Verdict v, std::string detail) { return {CheckKind::Behavioral, v, std::move(detail)}; }

}  // namespace

CheckResult verify_behavioral(std::string_view original_text, std::string_view variant_text,
                              const VariantRecord& record, const std::optional<std::string>& runtime_command) {
    if (!runtime_command || runtime_command->empty()) return behavioral(Verdict::Skipped, "no runtime configured");
    if (original_text.find(kHarnessMarker) == std::string_view::npos) {
        return behavioral(Verdict::Skipped, "not a behavioral fixture");
    }
    const auto command = split_command(*runtime_command);
    if (command.empty()) return behavioral(Verdict::Skipped, "no runtime configured");

    std::string script(variant_text);
    const bool encrypted = record.encoding == "xor" || record.encoding == "aes-256-cbc";
    if (encrypted) {
        const js::Ast ast = js::parse_source(variant_text);
        const auto found = extract_decryptor_constants(ast, record.encoding != "xor");
        if (found.empty()) return behavioral(Verdict::Fail, "decryptor call not found");
        script += "\nconsole.log(" + js::quote_string(kProbePrefix) + " + " + js::emit_expression(*found.front().call) + ");\n";
    }

    const auto original = run_script(command, std::string(original_text), "original");
    const auto variant = run_script(command, script, "variant");
    if (original.timed_out || variant.timed_out) return behavioral(Verdict::Fail, "runtime timed out");
    if (original.exit_code != 0) return behavioral(Verdict::Fail, "original exited with " + std::to_string(original.exit_code));
    if (variant.exit_code != 0) {
        return behavioral(Verdict::Fail, "variant exited with " + std::to_string(variant.exit_code) + ": " + variant.err);
    }

    std::string out = variant.out;
    if (encrypted) {
        const std::string needle = kProbePrefix;
        const auto at = out.rfind(needle);
        if (at == std::string::npos) return behavioral(Verdict::Fail, "decryptor probe printed nothing");
        std::string value = out.substr(at + needle.size());
        while (!value.empty() && (value.back() == '\n' || value.back() == '\r')) value.pop_back();
        out.erase(at);
        if (value != record.ioc_canonical) {
            return behavioral(Verdict::Fail, "decryptor evaluated to \"" + value + "\"");
        }
    }
    if (out != original.out) return behavioral(Verdict::Fail, "stdout differs from the original");
    return behavioral(Verdict::Pass, encrypted ? "stdout matches; decryptor yields the indicator" : "stdout matches");
}

}  // namespace iocbench::groundtruth
