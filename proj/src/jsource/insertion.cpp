#include "iocbench/jsource/insertion.hpp"

#include "iocbench/error.hpp"

#include <string>

namespace iocbench::js {

const Node& node_at(const Node& root, const NodePath& path) {
    const Node* n = &root;
    for (std::size_t i : path) {
        n = &n->kids.at(i);
    }
    return *n;
}

Node& node_at(Node& root, const NodePath& path) {
    return const_cast<Node&>(node_at(static_cast<const Node&>(root), path));
}

std::string_view to_string(InsertionKind kind) {
    switch (kind) {
        case InsertionKind::TopLevelVariable: return "top-level-variable";
        case InsertionKind::FunctionBody: return "function-body";
        case InsertionKind::ObjectProperty: return "object-property";
        case InsertionKind::StringTable: return "string-table";
    }
    return "top-level-variable";
}

InsertionKind insertion_kind_from_string(std::string_view s) {
    for (auto k : {InsertionKind::TopLevelVariable, InsertionKind::FunctionBody, InsertionKind::ObjectProperty,
                   InsertionKind::StringTable}) {
        if (to_string(k) == s) return k;
    }
    throw Error(ErrorCode::SchemaError, "unknown insertion point kind: " + std::string(s));
}

namespace {

void collect(const Node& n, NodePath& path, std::vector<InsertionPoint>& out) {
    if (is_function_like(n) && function_body(n) != nullptr) {
        NodePath body = path;
        body.push_back(n.is(NodeKind::ArrowFunction) ? 1 : 2);
        out.push_back({InsertionKind::FunctionBody, std::move(body)});
    } else if (n.is(NodeKind::ObjectLit)) {
        out.push_back({InsertionKind::ObjectProperty, path});
    }
    for (std::size_t i = 0; i < n.kids.size(); ++i) {
        path.push_back(i);
        collect(n.kids[i], path, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<InsertionPoint> collect_insertion_points(const Ast& ast) {
    std::vector<InsertionPoint> out{{InsertionKind::TopLevelVariable, {}}};
    NodePath path;
    collect(ast.root, path, out);
    return out;
}

InsertionPoint string_table_point() { return {InsertionKind::StringTable, {}}; }

std::size_t after_directives(const Node& block) {
    std::size_t i = 0;
    while (i < block.kids.size() && block.kids[i].is(NodeKind::ExprStmt) &&
           block.kids[i].kids[0].is(NodeKind::StringLit)) {
        ++i;
    }
    return i;
}

}  // namespace iocbench::js
