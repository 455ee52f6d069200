#include "iocbench/jsource/ast.hpp"

#include <array>

namespace iocbench::js {

std::string_view to_string(NodeKind kind) {
    static constexpr std::array<std::string_view, 53> kNames = {
        "None",         "Program",     "VarDecl",      "VarDeclarator", "FunctionDecl",
        "FunctionExpr", "ArrowFunction", "Params",     "AssignPattern", "RestElement",
        "ClassDecl",    "MethodDef",   "Block",        "EmptyStmt",     "ExprStmt",
        "If",           "For",         "ForIn",        "ForOf",         "While",
        "DoWhile",      "Switch",      "Case",         "Return",        "Break",
        "Continue",     "Throw",       "Try",          "Catch",         "Identifier",
        "PropName",     "NumberLit",   "StringLit",    "TemplateLit",   "TemplateChunk",
        "RegexLit",     "BoolLit",     "NullLit",      "This",          "Super",
        "ArrayLit",     "ObjectLit",   "Property",     "Spread",        "Unary",
        "Update",       "Binary",      "Assign",       "Conditional",   "Sequence",
        "Call",         "New",         "Member",
    };
    const auto i = static_cast<std::size_t>(kind);
    return i < kNames.size() ? kNames[i] : "Unknown";
}

bool same_structure(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.text != b.text || a.flags != b.flags || a.kids.size() != b.kids.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.kids.size(); ++i) {
        if (!same_structure(a.kids[i], b.kids[i])) {
            return false;
        }
    }
    return true;
}

namespace {

void dump_into(const Node& node, std::string& out) {
    out += '(';
    out += to_string(node.kind);
    if (!node.text.empty()) {
        out += " \"";
        for (char c : node.text) {
            if (c == '"' || c == '\\') {
                out += '\\';
            }
            out += c;
        }
        out += '"';
    }
    if (node.flags != 0) {
        out += " #" + std::to_string(node.flags);
    }
    for (const auto& kid : node.kids) {
        out += ' ';
        dump_into(kid, out);
    }
    out += ')';
}

}  // namespace

std::string dump(const Node& node) {
    std::string out;
    dump_into(node, out);
    return out;
}

bool is_function_like(const Node& node) {
    return node.is(NodeKind::FunctionDecl) || node.is(NodeKind::FunctionExpr) ||
           node.is(NodeKind::ArrowFunction);
}

bool is_statement(const Node& node) {
    switch (node.kind) {
        case NodeKind::VarDecl:
        case NodeKind::FunctionDecl:
        case NodeKind::ClassDecl:
        case NodeKind::Block:
        case NodeKind::EmptyStmt:
        case NodeKind::ExprStmt:
        case NodeKind::If:
        case NodeKind::For:
        case NodeKind::ForIn:
        case NodeKind::ForOf:
        case NodeKind::While:
        case NodeKind::DoWhile:
        case NodeKind::Switch:
        case NodeKind::Return:
        case NodeKind::Break:
        case NodeKind::Continue:
        case NodeKind::Throw:
        case NodeKind::Try:
            return true;
        default:
            return false;
    }
}

const Node* function_body(const Node& fn) {
    if (fn.is(NodeKind::ArrowFunction)) {
        return fn.has(flag::kExprBody) ? nullptr : &fn.kids[1];
    }
    return &fn.kids[2];
}

Node* function_body(Node& fn) {
    return const_cast<Node*>(function_body(static_cast<const Node&>(fn)));
}

const Node& function_params(const Node& fn) {
    return fn.is(NodeKind::ArrowFunction) ? fn.kids[0] : fn.kids[1];
}

Node make_none() { return Node(NodeKind::None); }

Node make_ident(std::string name) { return Node(NodeKind::Identifier, std::move(name)); }

Node make_prop_name(std::string name) { return Node(NodeKind::PropName, std::move(name)); }

Node make_string(std::string value) { return Node(NodeKind::StringLit, std::move(value)); }

Node make_number(std::string raw) { return Node(NodeKind::NumberLit, std::move(raw)); }

Node make_number(std::int64_t value) {
    if (value < 0) {
        return Node(NodeKind::Unary, "-", {make_number(std::to_string(-value))});
    }
    return make_number(std::to_string(value));
}

Node make_call(Node callee, std::vector<Node> args) {
    Node n(NodeKind::Call);
    n.kids.reserve(args.size() + 1);
    n.kids.push_back(std::move(callee));
    for (auto& a : args) {
        n.kids.push_back(std::move(a));
    }
    return n;
}

Node make_member(Node object, std::string property) {
    return Node(NodeKind::Member, {}, {std::move(object), make_prop_name(std::move(property))});
}

Node make_index(Node object, Node index) {
    Node n(NodeKind::Member, {}, {std::move(object), std::move(index)});
    n.flags |= flag::kComputed;
    return n;
}

Node make_binary(std::string op, Node left, Node right) {
    return Node(NodeKind::Binary, std::move(op), {std::move(left), std::move(right)});
}

Node make_assign(Node target, Node value, std::string op) {
    return Node(NodeKind::Assign, std::move(op), {std::move(target), std::move(value)});
}

Node make_var(std::string kind, std::string name, Node init) {
    Node decl(NodeKind::VarDeclarator, {}, {make_ident(std::move(name)), std::move(init)});
    return Node(NodeKind::VarDecl, std::move(kind), {std::move(decl)});
}

Node make_expr_stmt(Node expr) { return Node(NodeKind::ExprStmt, {}, {std::move(expr)}); }

Node make_return(Node arg) { return Node(NodeKind::Return, {}, {std::move(arg)}); }

Node make_block(std::vector<Node> statements) {
    return Node(NodeKind::Block, {}, std::move(statements));
}

Node make_params(const std::vector<std::string>& names) {
    Node p(NodeKind::Params);
    for (const auto& n : names) {
        p.kids.push_back(make_ident(n));
    }
    return p;
}

Node make_function_decl(std::string name, Node params, Node body) {
    return Node(NodeKind::FunctionDecl, {}, {make_ident(std::move(name)), std::move(params), std::move(body)});
}

Node make_property(std::string key, Node value) {
    return Node(NodeKind::Property, {}, {make_prop_name(std::move(key)), std::move(value)});
}

}  // namespace iocbench::js
