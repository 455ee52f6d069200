#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace iocbench::js {

enum class TokenKind {
    Identifier,
    Keyword,
    String,
    Number,
    Punctuator,
    Template,
    Regex,
    Comment,
    Whitespace,
};

std::string_view to_string(TokenKind kind);

/// Half-open byte range [begin, end) into the source text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
    TokenKind kind = TokenKind::Whitespace;
    std::string text;
    Span span;
};

bool is_keyword(std::string_view word);

/// Splits source into tokens, keeping comments and whitespace, so that
/// concatenating every token's text reproduces the input exactly.
/// Template literals (including substitutions) are a single token.
/// Throws Error(LexError) on unterminated strings, comments, templates,
/// regex literals, or characters outside the supported subset.
std::vector<Token> tokenize(std::string_view text);

/// One piece of a template literal token: either raw chunk text or the
/// source of a ${...} substitution. Offsets are relative to the token text.
struct TemplatePart {
    bool substitution = false;
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Splits the text of a Template token into alternating chunks and
/// substitutions, starting and ending with a chunk.
std::vector<TemplatePart> split_template(std::string_view token_text);

}  // namespace iocbench::js
