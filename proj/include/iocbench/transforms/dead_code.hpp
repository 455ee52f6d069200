#pragma once

#include "iocbench/jsource/ast.hpp"
#include "iocbench/rng.hpp"

#include <string>
#include <vector>

namespace iocbench::transforms {

enum class DeadCodeKind { Function, Guard, Declaration };

/// A snippet whose `$`-prefixed identifiers are placeholders, replaced with
/// fresh names at injection time. Guards never run (constant-false test);
/// functions and declarations have no side effects.
struct DeadCodeTemplate {
    std::string id;
    DeadCodeKind kind = DeadCodeKind::Function;
    std::string source;
};

struct DeadCodePool {
    std::string version;
    std::vector<DeadCodeTemplate> templates;
};

const DeadCodePool& default_dead_code_pool();

struct DeadCodeReport {
    std::string pool_version;
    /// In injection order.
    std::vector<std::string> template_ids;
};

/// Inserts `picks` templates (seeded 2-5 when picks is 0) at seeded
/// statement boundaries of the program or of function bodies. The first pick
/// is always a function template.
DeadCodeReport inject_dead_code(js::Ast& ast, Rng& rng, const DeadCodePool& pool, std::size_t picks = 0);

}  // namespace iocbench::transforms
