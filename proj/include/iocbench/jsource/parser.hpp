#pragma once

#include "iocbench/jsource/ast.hpp"
#include "iocbench/jsource/token.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace iocbench::js {

/// Parses a token list produced by tokenize() into an Ast.
///
/// Throws Error(ParseError) on malformed input and Error(ParseUnsupported)
/// naming the construct for syntax outside the supported subset
/// (modules, generators, async functions, destructuring, labels, optional
/// chaining, class fields, tagged templates and similar).
Ast parse(const std::vector<Token>& tokens);

/// tokenize + parse.
Ast parse_source(std::string_view text);

/// A parsed source file.
struct SourceUnit {
    std::string text;
    std::vector<Token> tokens;
    Ast ast;
};

SourceUnit load_source(std::string text);

/// Decodes the escapes of a quoted string literal (quotes included) into UTF-8.
std::string cook_string_literal(std::string_view raw);

}  // namespace iocbench::js
