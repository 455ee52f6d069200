#pragma once

#include "iocbench/jsource/ast.hpp"
#include "iocbench/rng.hpp"
#include "iocbench/transforms/names.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace iocbench::transforms {

struct StructuralOptions {
    bool string_array = true;
    bool flattening = true;
    /// 0 draws a seeded depth in [1, 2].
    int wrapper_depth = 0;
};

struct StructuralReport {
    bool string_array = false;
    std::uint64_t string_count = 0;
    std::uint64_t rotation = 0;
    bool flattening = false;
    std::uint64_t flattened = 0;
    /// One "FLATTEN_SKIP: <function>: <reason>" note per body left as is.
    std::vector<std::string> flatten_skips;
    int wrapper_depth = 0;
    std::uint64_t wrapped_functions = 0;
};

/// Routes direct calls of top-level function declarations through `depth`
/// forwarding functions `function w(...args) { return next(...args); }`.
/// Returns how many functions were wrapped.
std::uint64_t add_wrappers(js::Ast& ast, int depth, NameAllocator& names);

/// Rewrites each eligible function body (three or more statements once
/// nested function declarations are lifted out; no class declaration; not a
/// constructor) as
///   var s = A; while (true) { switch (s) { case A: ...; s = B; continue; ... } break; }
/// with seeded, shuffled case states. Top-level let/const become var.
void flatten_control_flow(js::Ast& ast, Rng& rng, NameAllocator& names, StructuralReport& report);

/// Moves every expression-position string literal (not directives, not
/// property keys) into one top-level array stored rotated by a seeded r and
/// read through `function get(i) { return arr[(i + K) % N]; }`.
void extract_string_array(js::Ast& ast, Rng& rng, NameAllocator& names, StructuralReport& report);

/// wrappers -> flattening -> string array.
StructuralReport structural_obfuscate(js::Ast& ast, Rng& rng, const StructuralOptions& options);

}  // namespace iocbench::transforms
