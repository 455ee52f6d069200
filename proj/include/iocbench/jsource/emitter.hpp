#pragma once

#include "iocbench/jsource/ast.hpp"

#include <string>

namespace iocbench::js {

/// Renders an Ast as normalized source: two-space indentation, one statement
/// per line, explicit semicolons, double-quoted strings. Parenthesization is
/// derived from operator precedence, so parse(emit(ast)) has the same
/// structure as ast. Statement comments are kept.
std::string emit(const Ast& ast);

std::string emit_expression(const Node& expr);

/// Double-quoted JavaScript string literal for a UTF-8 value.
std::string quote_string(std::string_view value);

/// True when name can be written as a bare identifier.
bool is_identifier_name(std::string_view name);

}  // namespace iocbench::js
