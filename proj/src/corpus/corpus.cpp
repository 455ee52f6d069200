#include "iocbench/corpus/corpus.hpp"

#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/json_util.hpp"
#include "iocbench/jsource/scope.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace iocbench::corpus {

namespace fs = std::filesystem;
using js::Node;
using js::NodeKind;

std::uint64_t count_loc(const std::vector<js::Token>& tokens, std::string_view text) {
    std::vector<std::size_t> line_starts{0};
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n') line_starts.push_back(i + 1);
    }
    auto line_of = [&](std::size_t offset) {
        return static_cast<std::size_t>(std::upper_bound(line_starts.begin(), line_starts.end(), offset) -
                                        line_starts.begin()) - 1;
    };
    std::vector<bool> code(line_starts.size(), false);
    for (const auto& t : tokens) {
        if (t.kind == js::TokenKind::Whitespace || t.kind == js::TokenKind::Comment || t.span.end == t.span.begin) {
            continue;
        }
        const std::size_t first = line_of(t.span.begin);
        const std::size_t last = line_of(t.span.end - 1);
        for (std::size_t l = first; l <= last; ++l) code[l] = true;
    }
    return static_cast<std::uint64_t>(std::count(code.begin(), code.end(), true));
}

namespace {

std::uint64_t decision_points(const Node& n) {
    std::uint64_t d = 0;
    for (const auto& k : n.kids) {
        if (js::is_function_like(k)) continue;
        switch (k.kind) {
            case NodeKind::If:
            case NodeKind::Conditional:
            case NodeKind::For:
            case NodeKind::ForIn:
            case NodeKind::ForOf:
            case NodeKind::While:
            case NodeKind::DoWhile:
                ++d;
                break;
            case NodeKind::Binary:
                if (k.text == "&&" || k.text == "||") ++d;
                break;
            case NodeKind::Case:
                if (!k.kids[0].none()) ++d;
                break;
            default:
                break;
        }
        d += decision_points(k);
    }
    return d;
}

void collect_functions(const Node& n, std::vector<const Node*>& out) {
    for (const auto& k : n.kids) {
        if (js::is_function_like(k)) out.push_back(&k);
        collect_functions(k, out);
    }
}

}  // namespace

std::uint64_t mccabe(const Node& fn) {
    // Parameters (default values) and body both belong to the function.
    return 1 + decision_points(fn);
}

CodeStats compute_code_stats(const js::SourceUnit& unit) {
    CodeStats s;
    s.loc = count_loc(unit.tokens, unit.text);
    std::vector<const Node*> fns;
    collect_functions(unit.ast.root, fns);
    s.function_count = fns.size();
    if (fns.empty()) {
        s.cyclomatic_complexity = Rational(1 + decision_points(unit.ast.root));
        return s;
    }
    BigInt total = 0;
    for (const Node* f : fns) total += mccabe(*f);
    s.cyclomatic_complexity = Rational(total, BigInt(fns.size()));
    return s;
}

std::string file_id_for(const std::string& relative_path) {
    std::string p = relative_path;
    const auto slash = p.find_last_of('/');
    const auto dot = p.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) p.erase(dot);
    std::string out;
    for (char c : p) {
        if (c == '/' || c == '\\') {
            out += "__";
        } else {
            out += c;
        }
    }
    return out;
}

std::string category_for(const std::string& relative_path) {
    const auto slash = relative_path.find('/');
    return slash == std::string::npos ? "uncategorized" : relative_path.substr(0, slash);
}

bool has_external_dependency(const std::vector<js::Token>& tokens) {
    const js::Token* prev = nullptr;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.kind == js::TokenKind::Whitespace || t.kind == js::TokenKind::Comment) continue;
        const bool after_dot = prev != nullptr && prev->kind == js::TokenKind::Punctuator && prev->text == ".";
        if (!after_dot && t.kind == js::TokenKind::Keyword && (t.text == "import" || t.text == "export")) {
            return true;
        }
        if (!after_dot && t.kind == js::TokenKind::Identifier && t.text == "require") {
            for (std::size_t j = i + 1; j < tokens.size(); ++j) {
                if (tokens[j].kind == js::TokenKind::Whitespace || tokens[j].kind == js::TokenKind::Comment) continue;
                if (tokens[j].text == "(") return true;
                break;
            }
        }
        prev = &t;
    }
    return false;
}

IngestResult ingest_corpus(const fs::path& root, const SelectionCriteria& criteria, std::uint64_t master_seed) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw Error(ErrorCode::IoError, "corpus root is not a readable directory: " + root.string());
    }
    std::vector<std::string> paths;
    fs::recursive_directory_iterator it(root, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot read corpus root: " + root.string());
    for (const auto& e : it) {
        if (e.is_regular_file() && e.path().extension() == ".js") {
            paths.push_back(fs::relative(e.path(), root).generic_string());
        }
    }
    std::sort(paths.begin(), paths.end());

    IngestResult result;
    result.manifest.master_seed = master_seed;
    std::map<std::string, std::size_t> per_category;
    std::map<std::string, std::string> ids;
    for (const auto& rel : paths) {
        std::string text;
        try {
            text = read_file(root / rel);
        } catch (const Error& e) {
            result.rejections.push_back({rel, "IO_ERROR", e.what()});
            continue;
        }
        js::SourceUnit unit;
        try {
            auto tokens = js::tokenize(text);
            if (has_external_dependency(tokens)) {
                result.rejections.push_back({rel, "EXTERNAL_DEPENDENCY", "imports or requires a module"});
                continue;
            }
            unit = js::load_source(text);
            js::resolve_scopes(unit.ast);
        } catch (const Error& e) {
            result.rejections.push_back({rel, std::string(to_string(e.code())), e.what()});
            continue;
        }
        CodeStats stats = compute_code_stats(unit);
        if (stats.loc < criteria.min_loc || stats.loc > criteria.max_loc) {
            result.rejections.push_back({rel, "LOC_OUT_OF_BOUNDS", "loc " + std::to_string(stats.loc)});
            continue;
        }
        const std::string category = category_for(rel);
        if (criteria.max_per_category && per_category[category] >= *criteria.max_per_category) {
            result.rejections.push_back({rel, "CATEGORY_CAP", "category " + category + " is full"});
            continue;
        }
        const std::string id = file_id_for(rel);
        if (auto [pos, inserted] = ids.emplace(id, rel); !inserted) {
            result.rejections.push_back({rel, "DUPLICATE_ID", "file id " + id + " already used by " + pos->second});
            continue;
        }
        ++per_category[category];
        result.manifest.entries.push_back({id, rel, category, std::move(stats)});
    }
    if (result.manifest.entries.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no corpus files survived filtering under " + root.string());
    }
    return result;
}

nlohmann::json manifest_to_json(const CorpusManifest& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : m.entries) {
        entries.push_back({{"file_id", e.file_id},
                           {"path", e.path},
                           {"category", e.category},
                           {"stats",
                            {{"loc", e.stats.loc},
                             {"function_count", e.stats.function_count},
                             {"cyclomatic_complexity", rational_to_json(e.stats.cyclomatic_complexity)}}}});
    }
    return {{"master_seed", m.master_seed}, {"entries", std::move(entries)}};
}

CorpusManifest manifest_from_json(const nlohmann::json& j) {
    expect_keys(j, {"master_seed", "entries"}, "manifest");
    if (!j["master_seed"].is_number_unsigned() || !j["entries"].is_array()) {
        throw Error(ErrorCode::SchemaError, "malformed manifest");
    }
    CorpusManifest m;
    m.master_seed = j["master_seed"].get<std::uint64_t>();
    for (const auto& e : j["entries"]) {
        expect_keys(e, {"file_id", "path", "category", "stats"}, "manifest entry");
        expect_keys(e["stats"], {"loc", "function_count", "cyclomatic_complexity"}, "stats");
        if (!e["file_id"].is_string() || !e["path"].is_string() || !e["category"].is_string() ||
            !e["stats"]["loc"].is_number_unsigned() || !e["stats"]["function_count"].is_number_unsigned()) {
            throw Error(ErrorCode::SchemaError, "malformed manifest entry");
        }
        CorpusEntry entry;
        entry.file_id = e["file_id"].get<std::string>();
        entry.path = e["path"].get<std::string>();
        entry.category = e["category"].get<std::string>();
        entry.stats.loc = e["stats"]["loc"].get<std::uint64_t>();
        entry.stats.function_count = e["stats"]["function_count"].get<std::uint64_t>();
        entry.stats.cyclomatic_complexity = rational_from_json(e["stats"]["cyclomatic_complexity"]);
        m.entries.push_back(std::move(entry));
    }
    return m;
}

CorpusSummary summarize_corpus(const CorpusManifest& manifest) {
    if (manifest.entries.empty()) throw Error(ErrorCode::EmptyCorpus, "empty manifest");
    CorpusSummary s;
    s.file_count = manifest.entries.size();
    const BigInt n(manifest.entries.size());
    BigInt loc = 0;
    BigInt fns = 0;
    Rational cc(0);
    s.min_loc = manifest.entries.front().stats.loc;
    s.max_loc = s.min_loc;
    for (const auto& e : manifest.entries) {
        loc += e.stats.loc;
        fns += e.stats.function_count;
        cc += e.stats.cyclomatic_complexity;
        s.min_loc = std::min(s.min_loc, e.stats.loc);
        s.max_loc = std::max(s.max_loc, e.stats.loc);
    }
    s.avg_loc = Rational(loc, n);
    s.avg_functions = Rational(fns, n);
    s.avg_cyclomatic_complexity = cc / Rational(n);
    return s;
}

std::string render_summary(const CorpusSummary& s, const std::string& title) {
    std::ostringstream out;
    out << "| " << title << " | value |\n|---|---|\n";
    out << "| Total files | " << s.file_count << " |\n";
    out << "| Avg. LOC | " << to_decimal(s.avg_loc, 1) << " |\n";
    out << "| LOC range | [" << s.min_loc << ", " << s.max_loc << "] |\n";
    out << "| Avg. functions per file | " << to_decimal(s.avg_functions, 2) << " |\n";
    out << "| Avg. cyclomatic complexity | " << to_decimal(s.avg_cyclomatic_complexity, 2) << " |\n";
    return out.str();
}

}  // namespace iocbench::corpus
