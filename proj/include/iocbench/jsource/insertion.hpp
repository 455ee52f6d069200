#pragma once

#include "iocbench/jsource/ast.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace iocbench::js {

/// Child indices leading from the root to a node.
using NodePath = std::vector<std::size_t>;

const Node& node_at(const Node& root, const NodePath& path);
Node& node_at(Node& root, const NodePath& path);

enum class InsertionKind { TopLevelVariable, FunctionBody, ObjectProperty, StringTable };

std::string_view to_string(InsertionKind kind);
InsertionKind insertion_kind_from_string(std::string_view s);

/// Where an indicator may be placed. The anchor is the Program for
/// top-level-variable and string-table, the body Block for function-body and
/// the ObjectLit for object-property.
struct InsertionPoint {
    InsertionKind kind = InsertionKind::TopLevelVariable;
    NodePath anchor;

    bool operator==(const InsertionPoint&) const = default;
};

/// Points present in the program, in pre-order. The top-level-variable
/// point always comes first. The string-table point is not listed because
/// it is synthesized on demand (see string_table_point).
std::vector<InsertionPoint> collect_insertion_points(const Ast& ast);

InsertionPoint string_table_point();

/// Index in a statement list after any leading directive prologue.
std::size_t after_directives(const Node& block);

}  // namespace iocbench::js
