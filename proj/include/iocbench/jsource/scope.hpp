#pragma once

#include "iocbench/jsource/ast.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace iocbench::js {

enum class BindingKind { Var, Let, Const, Function, Class, Param, CatchParam, FunctionName };

std::string_view to_string(BindingKind kind);

struct Binding {
    std::string name;
    int scope_id = 0;
    BindingKind kind = BindingKind::Var;
    /// Declaration and reference sites, in source order of traversal.
    std::vector<Span> references;
};

/// Result of scope analysis.
///
/// Identifier nodes are numbered in pre-order (the order walk() visits
/// them). resolution[i] is the binding index of the i-th Identifier, or -1
/// when it refers to a builtin or an undeclared global.
struct ScopeTable {
    std::vector<Binding> bindings;
    std::vector<int> resolution;
    std::set<std::string> builtins;
    /// Names referenced without any declaration in scope.
    std::set<std::string> globals;

    /// Bindings with the given name, in declaration order.
    std::vector<const Binding*> find(std::string_view name) const;
    /// True when the binding may be renamed.
    bool renameable(const Binding& b) const;
};

/// Host and language globals that renaming never touches.
const std::set<std::string>& builtin_names();

/// Throws Error(ScopeError) when a lexical declaration conflicts with
/// another declaration of the same name in one scope.
ScopeTable resolve_scopes(const Ast& ast);

}  // namespace iocbench::js
