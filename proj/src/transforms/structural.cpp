#include "iocbench/transforms/structural.hpp"

#include "iocbench/jsource/insertion.hpp"
#include "iocbench/jsource/scope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace iocbench::transforms {

using js::Node;
using js::NodeKind;

namespace {

Node rest_params(const std::string& name) {
    Node p(NodeKind::Params);
    p.kids.push_back(Node(NodeKind::RestElement, {}, {js::make_ident(name)}));
    return p;
}

Node forwarding_function(const std::string& name, const std::string& target, const std::string& args) {
    Node call = js::make_call(js::make_ident(target), {Node(NodeKind::Spread, {}, {js::make_ident(args)})});
    return js::make_function_decl(name, rest_params(args), js::make_block({js::make_return(std::move(call))}));
}

}  // namespace

std::uint64_t add_wrappers(js::Ast& ast, int depth, NameAllocator& names) {
    if (depth <= 0) return 0;
    const js::ScopeTable scopes = js::resolve_scopes(ast);

    // Program-scope function bindings, by binding index.
    std::map<int, std::string> top_functions;
    for (const auto& s : ast.root.kids) {
        if (!s.is(NodeKind::FunctionDecl)) continue;
        for (std::size_t b = 0; b < scopes.bindings.size(); ++b) {
            const auto& binding = scopes.bindings[b];
            if (binding.scope_id == 0 && binding.name == s.kids[0].text && binding.kind == js::BindingKind::Function) {
                top_functions.emplace(static_cast<int>(b), binding.name);
            }
        }
    }

    std::unordered_set<const Node*> callees;
    js::walk(static_cast<const Node&>(ast.root), [&](const Node& n) {
        if (n.is(NodeKind::Call) && n.kids[0].is(NodeKind::Identifier)) callees.insert(&n.kids[0]);
        return true;
    });

    // Which functions have direct calls, and where.
    std::map<int, std::vector<Node*>> sites;
    std::size_t ordinal = 0;
    js::walk(ast.root, [&](Node& n) {
        if (!n.is(NodeKind::Identifier)) return true;
        const int b = scopes.resolution[ordinal++];
        if (callees.count(&n) != 0 && top_functions.count(b) != 0) sites[b].push_back(&n);
        return true;
    });

    std::map<std::string, std::vector<Node>> wrappers_after;
    for (auto& [b, refs] : sites) {
        const std::string& target = top_functions[b];
        std::string next = target;
        std::vector<Node> chain;
        for (int d = 0; d < depth; ++d) {
            const std::string w = names.fresh("forward");
            chain.push_back(forwarding_function(w, next, names.fresh("args")));
            next = w;
        }
        for (Node* ref : refs) ref->text = next;
        std::reverse(chain.begin(), chain.end());
        wrappers_after[target] = std::move(chain);
    }

    std::vector<Node> out;
    for (auto& s : ast.root.kids) {
        const bool fn = s.is(NodeKind::FunctionDecl);
        const std::string name = fn ? s.kids[0].text : std::string();
        out.push_back(std::move(s));
        if (fn) {
            auto it = wrappers_after.find(name);
            if (it != wrappers_after.end()) {
                for (auto& w : it->second) out.push_back(std::move(w));
                wrappers_after.erase(it);
            }
        }
    }
    ast.root.kids = std::move(out);
    return sites.size();
}

namespace {

std::string function_label(const Node& fn, const Node* method_key) {
    if (method_key != nullptr && method_key->is(NodeKind::PropName)) return method_key->text;
    if ((fn.is(NodeKind::FunctionDecl) || fn.is(NodeKind::FunctionExpr)) && !fn.kids[0].none()) {
        return fn.kids[0].text;
    }
    return "<anonymous>";
}

class Flattener {
public:
    Flattener(Rng& rng, NameAllocator& names, StructuralReport& report)
        : rng_(rng), names_(names), report_(report) {}

    void visit(Node& n, const Node* method_key = nullptr, bool constructor = false) {
        for (auto& k : n.kids) {
            if (n.is(NodeKind::MethodDef) && &k == &n.kids[1]) {
                visit(k, &n.kids[0], n.text == "constructor");
            } else if (n.is(NodeKind::Property) && &k == &n.kids[1] && js::is_function_like(k)) {
                visit(k, n.has(js::flag::kComputed) ? nullptr : &n.kids[0]);
            } else {
                visit(k);
            }
        }
        if (js::is_function_like(n)) {
            Node* body = js::function_body(n);
            if (body != nullptr) flatten(*body, function_label(n, method_key), constructor);
        }
    }

private:
    Rng& rng_;
    NameAllocator& names_;
    StructuralReport& report_;

    void skip(const std::string& label, const std::string& reason) {
        report_.flatten_skips.push_back("FLATTEN_SKIP: " + label + ": " + reason);
    }

    void flatten(Node& body, const std::string& label, bool constructor) {
        const std::size_t d = js::after_directives(body);
        std::vector<Node> lifted;
        std::vector<Node> linear;
        bool has_class = false;
        for (std::size_t i = d; i < body.kids.size(); ++i) {
            const Node& s = body.kids[i];
            if (s.is(NodeKind::FunctionDecl)) {
                lifted.push_back(s);
            } else {
                has_class = has_class || s.is(NodeKind::ClassDecl);
                linear.push_back(s);
            }
        }
        if (linear.size() < 3) {
            skip(label, "fewer than 3 statements");
            return;
        }
        if (constructor) {
            skip(label, "constructor");
            return;
        }
        if (has_class) {
            skip(label, "class declaration in body");
            return;
        }
        for (auto& s : linear) {
            if (s.is(NodeKind::VarDecl)) s.text = "var";
        }

        std::set<std::int64_t> used;
        std::vector<std::int64_t> states;
        while (states.size() < linear.size() + 1) {
            const auto v = static_cast<std::int64_t>(rng_.between(1000, 999999));
            if (used.insert(v).second) states.push_back(v);
        }
        const std::string state = names_.fresh("state");

        std::vector<Node> cases;
        for (std::size_t i = 0; i < linear.size(); ++i) {
            Node c(NodeKind::Case, {}, {js::make_number(states[i])});
            const bool exits = linear[i].is(NodeKind::Return) || linear[i].is(NodeKind::Throw);
            c.kids.push_back(std::move(linear[i]));
            if (!exits) {
                c.kids.push_back(js::make_expr_stmt(js::make_assign(js::make_ident(state), js::make_number(states[i + 1]))));
                c.kids.push_back(Node(NodeKind::Continue));
            }
            cases.push_back(std::move(c));
        }
        rng_.shuffle(cases);
        Node sw(NodeKind::Switch, {}, {js::make_ident(state)});
        for (auto& c : cases) sw.kids.push_back(std::move(c));
        Node loop(NodeKind::While, {}, {Node(NodeKind::BoolLit, "true"),
                                         js::make_block({std::move(sw), Node(NodeKind::Break)})});

        std::vector<Node> out(std::make_move_iterator(body.kids.begin()),
                              std::make_move_iterator(body.kids.begin() + static_cast<std::ptrdiff_t>(d)));
        for (auto& f : lifted) out.push_back(std::move(f));
        out.push_back(js::make_var("var", state, js::make_number(states[0])));
        out.push_back(std::move(loop));
        body.kids = std::move(out);
        ++report_.flattened;
    }
};

bool is_directive(const Node& parent, std::size_t index) {
    const bool prologue_owner = parent.is(NodeKind::Program) || parent.is(NodeKind::Block);
    return prologue_owner && index < js::after_directives(parent);
}

void collect_strings(Node& n, std::vector<Node*>& out) {
    for (std::size_t i = 0; i < n.kids.size(); ++i) {
        Node& k = n.kids[i];
        if (is_directive(n, i)) continue;
        const bool key_position = (n.is(NodeKind::Property) || n.is(NodeKind::MethodDef)) && i == 0 &&
                                  !n.has(js::flag::kComputed);
        if (key_position) continue;
        if (k.is(NodeKind::StringLit)) {
            out.push_back(&k);
        } else {
            collect_strings(k, out);
        }
    }
}

}  // namespace

void flatten_control_flow(js::Ast& ast, Rng& rng, NameAllocator& names, StructuralReport& report) {
    report.flattening = true;
    Flattener(rng, names, report).visit(ast.root);
}

void extract_string_array(js::Ast& ast, Rng& rng, NameAllocator& names, StructuralReport& report) {
    report.string_array = true;
    std::vector<Node*> sites;
    collect_strings(ast.root, sites);
    std::vector<std::string> values;
    std::map<std::string, std::size_t> index;
    for (Node* s : sites) {
        if (index.emplace(s->text, values.size()).second) values.push_back(s->text);
    }
    report.string_count = values.size();
    if (values.empty()) return;
    const std::size_t n = values.size();
    const std::size_t r = static_cast<std::size_t>(rng.below(n));
    report.rotation = r;
    const std::string arr = names.fresh("strings");
    const std::string get = names.fresh("str");
    for (Node* s : sites) {
        *s = js::make_call(js::make_ident(get), {js::make_number(static_cast<std::int64_t>(index[s->text]))});
    }
    Node stored(NodeKind::ArrayLit);
    for (std::size_t j = 0; j < n; ++j) stored.kids.push_back(js::make_string(values[(j + r) % n]));
    const std::size_t k = (n - r) % n;
    Node lookup = js::make_index(
        js::make_ident(arr),
        js::make_binary("%", js::make_binary("+", js::make_ident("i"), js::make_number(static_cast<std::int64_t>(k))),
                        js::make_number(static_cast<std::int64_t>(n))));
    Node accessor = js::make_function_decl(get, js::make_params({"i"}), js::make_block({js::make_return(std::move(lookup))}));
    const auto d = static_cast<std::ptrdiff_t>(js::after_directives(ast.root));
    ast.root.kids.insert(ast.root.kids.begin() + d, std::move(accessor));
    ast.root.kids.insert(ast.root.kids.begin() + d, js::make_var("var", arr, std::move(stored)));
}

StructuralReport structural_obfuscate(js::Ast& ast, Rng& rng, const StructuralOptions& options) {
    StructuralReport report;
    NameAllocator names(ast.root);
    report.wrapper_depth = options.wrapper_depth > 0 ? options.wrapper_depth : static_cast<int>(rng.between(1, 2));
    report.wrapped_functions = add_wrappers(ast, report.wrapper_depth, names);
    if (options.flattening) flatten_control_flow(ast, rng, names, report);
    if (options.string_array) extract_string_array(ast, rng, names, report);
    return report;
}

}  // namespace iocbench::transforms
