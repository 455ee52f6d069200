#include "iocbench/jsource/scope.hpp"

#include "iocbench/error.hpp"

#include <map>
#include <unordered_map>

namespace iocbench::js {

std::string_view to_string(BindingKind kind) {
    switch (kind) {
        case BindingKind::Var: return "var";
        case BindingKind::Let: return "let";
        case BindingKind::Const: return "const";
        case BindingKind::Function: return "function";
        case BindingKind::Class: return "class";
        case BindingKind::Param: return "param";
        case BindingKind::CatchParam: return "catch-param";
        case BindingKind::FunctionName: return "function-name";
    }
    return "var";
}

const std::set<std::string>& builtin_names() {
    static const std::set<std::string> kNames = {
        "Array", "ArrayBuffer", "BigInt", "Boolean", "Buffer", "DataView", "Date", "Error", "EvalError",
        "Float32Array", "Float64Array", "Function", "Infinity", "Int16Array", "Int32Array", "Int8Array",
        "Intl", "JSON", "Map", "Math", "NaN", "Number", "Object", "Promise", "Proxy", "RangeError",
        "ReferenceError", "Reflect", "RegExp", "Set", "String", "Symbol", "SyntaxError", "TextDecoder",
        "TextEncoder", "TypeError", "URIError", "Uint16Array", "Uint32Array", "Uint8Array",
        "Uint8ClampedArray", "WeakMap", "WeakSet", "__dirname", "__filename", "arguments", "atob", "btoa",
        "clearInterval", "clearTimeout", "console", "decodeURI", "decodeURIComponent", "document",
        "encodeURI", "encodeURIComponent", "escape", "eval", "exports", "global", "globalThis", "isFinite",
        "isNaN", "module", "parseFloat", "parseInt", "process", "require", "setInterval", "setTimeout",
        "undefined", "unescape", "window",
    };
    return kNames;
}

std::vector<const Binding*> ScopeTable::find(std::string_view name) const {
    std::vector<const Binding*> out;
    for (const auto& b : bindings) {
        if (b.name == name) out.push_back(&b);
    }
    return out;
}

bool ScopeTable::renameable(const Binding& b) const { return builtins.count(b.name) == 0; }

namespace {

bool is_lexical(BindingKind k) {
    return k == BindingKind::Let || k == BindingKind::Const || k == BindingKind::Class;
}

struct Scope {
    int parent = -1;
    bool function_scope = false;
    std::map<std::string, int, std::less<>> names;
};

class Resolver {
public:
    explicit Resolver(ScopeTable& table) : t_(table) {}

    void run(const Node& root) {
        const int program = new_scope(-1, true);
        scope_of_[&root] = program;
        declare_statements(root.kids, program, program);
        for (const auto& s : root.kids) {
            declare(s, program, program);
        }
        resolve(root, program);
    }

private:
    ScopeTable& t_;
    std::vector<Scope> scopes_;
    std::unordered_map<const Node*, int> scope_of_;
    std::unordered_map<const Node*, int> decl_of_;
    // Named function expressions get an extra scope holding only the name.
    std::unordered_map<const Node*, int> name_scope_of_;

    int new_scope(int parent, bool function_scope) {
        scopes_.push_back(Scope{parent, function_scope, {}});
        return static_cast<int>(scopes_.size()) - 1;
    }

    int add_binding(const Node& id, BindingKind kind, int scope, int path_from = -1) {
        Scope& s = scopes_[static_cast<std::size_t>(scope)];
        auto it = s.names.find(id.text);
        if (it != s.names.end()) {
            Binding& existing = t_.bindings[static_cast<std::size_t>(it->second)];
            if (is_lexical(kind) || is_lexical(existing.kind)) {
                throw Error(ErrorCode::ScopeError, "conflicting declarations of '" + id.text + "'", id.span.begin);
            }
            decl_of_[&id] = it->second;
            return it->second;
        }
        // A var hoisted through a block must not collide with a lexical
        // binding of that block.
        for (int b = path_from; b != -1 && b != scope; b = scopes_[static_cast<std::size_t>(b)].parent) {
            const auto& names = scopes_[static_cast<std::size_t>(b)].names;
            if (names.count(id.text) != 0) {
                throw Error(ErrorCode::ScopeError, "var '" + id.text + "' conflicts with a block declaration",
                            id.span.begin);
            }
        }
        t_.bindings.push_back(Binding{id.text, scope, kind, {}});
        const int index = static_cast<int>(t_.bindings.size()) - 1;
        s.names.emplace(id.text, index);
        decl_of_[&id] = index;
        return index;
    }

    // Lexical and function declarations directly in a statement list.
    void declare_statements(const std::vector<Node>& stmts, int scope, int fn_scope, std::size_t first = 0) {
        (void)fn_scope;
        for (std::size_t i = first; i < stmts.size(); ++i) {
            const Node& s = stmts[i];
            if (s.is(NodeKind::VarDecl) && s.text != "var") {
                const BindingKind k = s.text == "let" ? BindingKind::Let : BindingKind::Const;
                for (const auto& d : s.kids) add_binding(d.kids[0], k, scope);
            } else if (s.is(NodeKind::FunctionDecl)) {
                add_binding(s.kids[0], BindingKind::Function, scope);
            } else if (s.is(NodeKind::ClassDecl)) {
                add_binding(s.kids[0], BindingKind::Class, scope);
            }
        }
    }

    void declare_function(const Node& fn, int outer) {
        int parent = outer;
        if (fn.is(NodeKind::FunctionExpr) && !fn.kids[0].none()) {
            parent = new_scope(outer, false);
            name_scope_of_[&fn] = parent;
            add_binding(fn.kids[0], BindingKind::FunctionName, parent);
        }
        const int scope = new_scope(parent, true);
        scope_of_[&fn] = scope;
        for (const auto& p : function_params(fn).kids) {
            const Node& id = p.is(NodeKind::Identifier) ? p : p.kids[0];
            add_binding(id, BindingKind::Param, scope);
            if (p.is(NodeKind::AssignPattern)) declare(p.kids[1], scope, scope);
        }
        const Node* body = function_body(fn);
        if (body == nullptr) {
            declare(fn.kids[1], scope, scope);
            return;
        }
        scope_of_[body] = scope;
        declare_statements(body->kids, scope, scope);
        for (const auto& s : body->kids) declare(s, scope, scope);
    }

    // Creates scopes and records declarations for node's subtree.
    void declare(const Node& n, int scope, int fn_scope) {
        switch (n.kind) {
            case NodeKind::FunctionDecl:
            case NodeKind::FunctionExpr:
            case NodeKind::ArrowFunction:
                declare_function(n, scope);
                return;
            case NodeKind::ClassDecl:
                for (std::size_t i = 1; i < n.kids.size(); ++i) declare(n.kids[i], scope, fn_scope);
                return;
            case NodeKind::VarDecl:
                for (const auto& d : n.kids) {
                    if (n.text == "var") add_binding(d.kids[0], BindingKind::Var, fn_scope, scope);
                    declare(d.kids[1], scope, fn_scope);
                }
                return;
            case NodeKind::Block: {
                const int b = new_scope(scope, false);
                scope_of_[&n] = b;
                declare_statements(n.kids, b, fn_scope);
                for (const auto& s : n.kids) declare(s, b, fn_scope);
                return;
            }
            case NodeKind::For:
            case NodeKind::ForIn:
            case NodeKind::ForOf: {
                const int b = new_scope(scope, false);
                scope_of_[&n] = b;
                const Node& head = n.kids[0];
                if (head.is(NodeKind::VarDecl) && head.text != "var") {
                    const BindingKind k = head.text == "let" ? BindingKind::Let : BindingKind::Const;
                    for (const auto& d : head.kids) add_binding(d.kids[0], k, b);
                }
                for (const auto& k : n.kids) declare(k, b, fn_scope);
                return;
            }
            case NodeKind::Switch: {
                declare(n.kids[0], scope, fn_scope);
                const int b = new_scope(scope, false);
                scope_of_[&n] = b;
                for (std::size_t i = 1; i < n.kids.size(); ++i) {
                    declare_statements(n.kids[i].kids, b, fn_scope, 1);
                }
                for (std::size_t i = 1; i < n.kids.size(); ++i) declare(n.kids[i], b, fn_scope);
                return;
            }
            case NodeKind::Catch: {
                const int b = new_scope(scope, false);
                scope_of_[&n] = b;
                if (!n.kids[0].none()) add_binding(n.kids[0], BindingKind::CatchParam, b);
                const Node& body = n.kids[1];
                scope_of_[&body] = b;
                declare_statements(body.kids, b, fn_scope);
                for (const auto& s : body.kids) declare(s, b, fn_scope);
                return;
            }
            default:
                for (const auto& k : n.kids) declare(k, scope, fn_scope);
                return;
        }
    }

    int lookup(const std::string& name, int scope) const {
        for (int s = scope; s != -1; s = scopes_[static_cast<std::size_t>(s)].parent) {
            const auto& names = scopes_[static_cast<std::size_t>(s)].names;
            auto it = names.find(name);
            if (it != names.end()) return it->second;
        }
        return -1;
    }

    void resolve(const Node& n, int scope) {
        if (auto it = name_scope_of_.find(&n); it != name_scope_of_.end()) {
            // The function-expression name lives in its own scope.
            resolve_identifier(n.kids[0], it->second);
            const int inner = scope_of_.at(&n);
            for (std::size_t i = 1; i < n.kids.size(); ++i) resolve(n.kids[i], inner);
            return;
        }
        if (auto it = scope_of_.find(&n); it != scope_of_.end()) {
            scope = it->second;
        }
        if (n.is(NodeKind::Identifier)) {
            resolve_identifier(n, scope);
            return;
        }
        for (const auto& k : n.kids) resolve(k, scope);
    }

    void resolve_identifier(const Node& id, int scope) {
        int binding = -1;
        if (auto it = decl_of_.find(&id); it != decl_of_.end()) {
            binding = it->second;
        } else {
            binding = lookup(id.text, scope);
        }
        if (binding == -1 && t_.builtins.count(id.text) == 0) {
            t_.globals.insert(id.text);
        }
        if (binding != -1) {
            t_.bindings[static_cast<std::size_t>(binding)].references.push_back(id.span);
        }
        t_.resolution.push_back(binding);
    }
};

}  // namespace

ScopeTable resolve_scopes(const Ast& ast) {
    ScopeTable table;
    table.builtins = builtin_names();
    Resolver(table).run(ast.root);
    return table;
}

}  // namespace iocbench::js
