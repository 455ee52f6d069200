#pragma once

#include "iocbench/jsource/ast.hpp"
#include "iocbench/jsource/scope.hpp"
#include "iocbench/rng.hpp"

#include <string>
#include <vector>

namespace iocbench::js {

struct RenameEntry {
    std::string original;
    std::string renamed;
    int scope_id = 0;
};

struct RenameResult {
    Ast ast;
    /// One entry per renamed binding, in binding order.
    std::vector<RenameEntry> map;
};

/// Replaces every renameable binding with a fresh `_0x` + 6 hex name drawn
/// from rng. New names never collide with each other or with any name
/// already present in the program. Comments are dropped. Shorthand
/// properties are expanded so the property key keeps its name.
RenameResult rename_identifiers(const Ast& ast, const ScopeTable& scopes, Rng& rng);

/// All Identifier and PropName spellings in the tree.
std::vector<std::string> used_names(const Node& root);

}  // namespace iocbench::js
