#include "iocbench/transforms/dead_code.hpp"

#include "iocbench/error.hpp"
#include "iocbench/jsource/insertion.hpp"
#include "iocbench/jsource/parser.hpp"
#include "iocbench/transforms/names.hpp"

#include <map>

namespace iocbench::transforms {

using js::Node;
using js::NodeKind;

const DeadCodePool& default_dead_code_pool() {
    using K = DeadCodeKind;
    static const DeadCodePool kPool{
        "dc-pool-1",
        {
            {"fn-checksum", K::Function,
             "function $checksum($s) { var $h = 0; for (var $i = 0; $i < $s.length; $i++) { "
             "$h = ($h * 31 + $s.charCodeAt($i)) | 0; } return $h; }"},
            {"fn-clamp", K::Function,
             "function $clamp($v, $lo, $hi) { return $v < $lo ? $lo : $v > $hi ? $hi : $v; }"},
            {"fn-noop", K::Function, "function $noop() { return undefined; }"},
            {"fn-pad", K::Function,
             "function $pad($s, $n) { $s = String($s); while ($s.length < $n) { $s = \"0\" + $s; } return $s; }"},
            {"fn-swap", K::Function,
             "function $swap($arr, $i, $j) { var $t = $arr[$i]; $arr[$i] = $arr[$j]; $arr[$j] = $t; return $arr; }"},
            {"fn-range", K::Function,
             "function $range($n) { var $out = []; for (var $i = 0; $i < $n; $i++) { $out.push($i); } return $out; }"},
            {"guard-false-log", K::Guard, "if (false) { console.log(\"debug\"); }"},
            {"guard-typeof", K::Guard,
             "if (typeof undefined === \"number\") { throw new Error(\"unreachable\"); }"},
            {"guard-and", K::Guard, "if (false && Math.random() > 0.5) { var $tmp = [1, 2, 3]; $tmp.reverse(); }"},
            {"guard-while", K::Guard, "while (1 < 0) { var $k = 0; $k++; }"},
            {"guard-string", K::Guard, "if (\"a\" === \"b\") { var $flag = true; }"},
            {"decl-array", K::Declaration, "var $seq = [0, 1, 1, 2, 3, 5, 8];"},
            {"decl-object", K::Declaration, "var $state = { mode: \"idle\", retries: 0 };"},
            {"decl-string", K::Declaration, "var $label = \"cache-\" + 42;"},
            {"decl-fnexpr", K::Declaration, "var $identity = function ($x) { return $x; };"},
        },
    };
    return kPool;
}

namespace {

// Paths of the program and of every function body block.
void collect_blocks(const Node& n, js::NodePath& path, std::vector<js::NodePath>& out) {
    if (js::is_function_like(n) && js::function_body(n) != nullptr) {
        js::NodePath body = path;
        body.push_back(n.is(NodeKind::ArrowFunction) ? 1 : 2);
        out.push_back(std::move(body));
    }
    for (std::size_t i = 0; i < n.kids.size(); ++i) {
        path.push_back(i);
        collect_blocks(n.kids[i], path, out);
        path.pop_back();
    }
}

std::vector<Node> instantiate(const DeadCodeTemplate& t, NameAllocator& names) {
    js::Ast a = js::parse_source(t.source);
    std::map<std::string, std::string> bound;
    js::walk(a.root, [&](Node& n) {
        if (n.is(NodeKind::Identifier) && n.text.starts_with("$")) {
            auto it = bound.find(n.text);
            if (it == bound.end()) it = bound.emplace(n.text, names.fresh(n.text.substr(1))).first;
            n.text = it->second;
        }
        return true;
    });
    return std::move(a.root.kids);
}

}  // namespace

DeadCodeReport inject_dead_code(js::Ast& ast, Rng& rng, const DeadCodePool& pool, std::size_t picks) {
    std::vector<const DeadCodeTemplate*> functions;
    for (const auto& t : pool.templates) {
        if (t.kind == DeadCodeKind::Function) functions.push_back(&t);
    }
    if (functions.empty()) throw Error(ErrorCode::TemplateError, "dead-code pool has no function template");
    if (picks == 0) picks = static_cast<std::size_t>(rng.between(2, 5));

    NameAllocator names(ast.root);
    DeadCodeReport report{pool.version, {}};
    for (std::size_t p = 0; p < picks; ++p) {
        const DeadCodeTemplate& t = p == 0 ? *rng.pick(functions) : rng.pick(pool.templates);
        std::vector<js::NodePath> blocks{{}};
        js::NodePath path;
        collect_blocks(ast.root, path, blocks);
        Node& block = js::node_at(ast.root, rng.pick(blocks));
        const std::size_t lo = js::after_directives(block);
        const std::size_t at = lo + static_cast<std::size_t>(rng.below(block.kids.size() - lo + 1));
        auto stmts = instantiate(t, names);
        block.kids.insert(block.kids.begin() + static_cast<std::ptrdiff_t>(at), std::make_move_iterator(stmts.begin()),
                          std::make_move_iterator(stmts.end()));
        report.template_ids.push_back(t.id);
    }
    return report;
}

}  // namespace iocbench::transforms
