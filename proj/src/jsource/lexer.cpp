#include "iocbench/jsource/token.hpp"

#include "iocbench/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <vector>

namespace iocbench::js {

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Keyword: return "keyword";
        case TokenKind::String: return "string-literal";
        case TokenKind::Number: return "numeric-literal";
        case TokenKind::Punctuator: return "punctuator";
        case TokenKind::Template: return "template-literal";
        case TokenKind::Regex: return "regex-literal";
        case TokenKind::Comment: return "comment";
        case TokenKind::Whitespace: return "whitespace";
    }
    return "unknown";
}

namespace {

constexpr std::array<std::string_view, 40> kKeywords = {
    "await",  "break",    "case",       "catch",  "class",  "const",   "continue",
    "debugger", "default", "delete",    "do",     "else",   "enum",    "export",
    "extends", "false",   "finally",    "for",    "function", "if",    "import",
    "in",     "instanceof", "let",      "new",    "null",   "return",  "super",
    "switch", "this",     "throw",      "true",   "try",    "typeof",  "var",
    "void",   "while",    "with",       "yield",  "static",
};

// Ordered so that longer punctuators are tried before their prefixes.
constexpr std::array<std::string_view, 52> kPunctuators = {
    ">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=", "?\?=",
    "=>",   "==",  "!=",  "<=",  ">=",  "&&",  "||",  "??",  "?.",  "++",  "--",
    "+=",   "-=",  "*=",  "/=",  "%=",  "&=",  "|=",  "^=",  "<<",  ">>",  "**",
    "{",    "}",   "(",   ")",   "[",   "]",   ";",   ",",   "<",   ">",   "+",
    "-",    "*",   "/",   "%",   "&",   "|",   "^",   "!",
};

constexpr std::array<std::string_view, 6> kSinglePunctuators = {"~", "?", ":", "=", ".", "#"};

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<TemplatePart> split_template() {
        std::vector<TemplatePart> parts;
        pos_ = 1;
        std::size_t chunk_begin = 1;
        while (true) {
            if (pos_ >= src_.size()) {
                throw Error(ErrorCode::LexError, "unterminated template literal", 0);
            }
            const unsigned char c = at(pos_);
            if (c == '`') {
                parts.push_back({false, chunk_begin, pos_});
                return parts;
            }
            if (c == '\\') {
                pos_ += 2;
                continue;
            }
            if (c == '$' && at(pos_ + 1) == '{') {
                parts.push_back({false, chunk_begin, pos_});
                pos_ += 2;
                const std::size_t expr_begin = pos_;
                scan_substitution(0);
                parts.push_back({true, expr_begin, pos_ - 1});
                chunk_begin = pos_;
                continue;
            }
            ++pos_;
        }
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            out.push_back(next());
        }
        return out;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    // Whether a '/' at this point would begin a regex literal.
    bool regex_allowed_ = true;
    // One entry per open '(': true when it opened an if/while/for header,
    // after whose ')' a regex may follow.
    std::vector<bool> parens_;
    bool last_was_header_keyword_ = false;

    unsigned char at(std::size_t i) const {
        return i < src_.size() ? static_cast<unsigned char>(src_[i]) : 0;
    }

    bool starts_with(std::size_t i, std::string_view s) const {
        return src_.substr(i, s.size()) == s;
    }

    std::size_t whitespace_len(std::size_t i) const {
        const unsigned char c = at(i);
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
            return 1;
        }
        if (c == 0xC2 && at(i + 1) == 0xA0) {
            return 2;
        }
        if (c == 0xEF && at(i + 1) == 0xBB && at(i + 2) == 0xBF) {
            return 3;
        }
        if (c == 0xE2 && at(i + 1) == 0x80 && (at(i + 2) == 0xA8 || at(i + 2) == 0xA9)) {
            return 3;
        }
        return 0;
    }

    Token make(TokenKind kind, std::size_t begin) {
        Token t;
        t.kind = kind;
        t.span = {begin, pos_};
        t.text = std::string(src_.substr(begin, pos_ - begin));
        return t;
    }

    Token next() {
        const std::size_t begin = pos_;
        if (whitespace_len(pos_) != 0) {
            while (pos_ < src_.size()) {
                const std::size_t n = whitespace_len(pos_);
                if (n == 0) {
                    break;
                }
                pos_ += n;
            }
            return make(TokenKind::Whitespace, begin);
        }
        const unsigned char c = at(pos_);
        if (c == '/' && at(pos_ + 1) == '/') {
            while (pos_ < src_.size() && at(pos_) != '\n' && at(pos_) != '\r') {
                ++pos_;
            }
            return make(TokenKind::Comment, begin);
        }
        if (c == '/' && at(pos_ + 1) == '*') {
            const std::size_t close = src_.find("*/", pos_ + 2);
            if (close == std::string_view::npos) {
                throw Error(ErrorCode::LexError, "unterminated comment", begin);
            }
            pos_ = close + 2;
            return make(TokenKind::Comment, begin);
        }
        Token t = significant(begin);
        update_regex_context(t);
        return t;
    }

    Token significant(std::size_t begin) {
        const unsigned char c = at(pos_);
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_part(at(pos_))) {
                ++pos_;
            }
            const auto word = src_.substr(begin, pos_ - begin);
            return make(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin);
        }
        if (is_digit(c) || (c == '.' && is_digit(at(pos_ + 1)))) {
            scan_number();
            return make(TokenKind::Number, begin);
        }
        if (c == '"' || c == '\'') {
            scan_string(static_cast<char>(c));
            return make(TokenKind::String, begin);
        }
        if (c == '`') {
            scan_template();
            return make(TokenKind::Template, begin);
        }
        if (c == '/' && regex_allowed_) {
            scan_regex();
            return make(TokenKind::Regex, begin);
        }
        for (std::string_view p : kPunctuators) {
            if (starts_with(pos_, p)) {
                // "?." followed by a digit is a conditional and a number.
                if (p == "?." && is_digit(at(pos_ + 2))) {
                    continue;
                }
                pos_ += p.size();
                return make(TokenKind::Punctuator, begin);
            }
        }
        for (std::string_view p : kSinglePunctuators) {
            if (starts_with(pos_, p)) {
                pos_ += 1;
                return make(TokenKind::Punctuator, begin);
            }
        }
        throw Error(ErrorCode::LexError, "unexpected character", begin);
    }

    void update_regex_context(const Token& t) {
        const bool header_kw = t.kind == TokenKind::Keyword &&
                               (t.text == "if" || t.text == "while" || t.text == "for");
        bool closed_header = false;
        if (t.kind == TokenKind::Punctuator && t.text == "(") {
            parens_.push_back(last_was_header_keyword_);
        } else if (t.kind == TokenKind::Punctuator && t.text == ")" && !parens_.empty()) {
            closed_header = parens_.back();
            parens_.pop_back();
        }
        last_was_header_keyword_ = header_kw;
        if (closed_header) {
            regex_allowed_ = true;
            return;
        }
        switch (t.kind) {
            case TokenKind::Identifier:
            case TokenKind::Number:
            case TokenKind::String:
            case TokenKind::Template:
            case TokenKind::Regex:
                regex_allowed_ = false;
                break;
            case TokenKind::Keyword:
                regex_allowed_ = !(t.text == "this" || t.text == "super" || t.text == "true" ||
                                   t.text == "false" || t.text == "null");
                break;
            case TokenKind::Punctuator:
                regex_allowed_ = !(t.text == ")" || t.text == "]" || t.text == "}" ||
                                   t.text == "++" || t.text == "--");
                break;
            default:
                break;
        }
    }

    void scan_number() {
        if (at(pos_) == '0' && (at(pos_ + 1) == 'x' || at(pos_ + 1) == 'X' || at(pos_ + 1) == 'o' ||
                                at(pos_ + 1) == 'O' || at(pos_ + 1) == 'b' || at(pos_ + 1) == 'B')) {
            pos_ += 2;
            while (pos_ < src_.size() && (std::isxdigit(at(pos_)) != 0 || at(pos_) == '_')) {
                ++pos_;
            }
        } else {
            while (is_digit(at(pos_)) || at(pos_) == '_') {
                ++pos_;
            }
            if (at(pos_) == '.') {
                ++pos_;
                while (is_digit(at(pos_)) || at(pos_) == '_') {
                    ++pos_;
                }
            }
            if (at(pos_) == 'e' || at(pos_) == 'E') {
                std::size_t p = pos_ + 1;
                if (at(p) == '+' || at(p) == '-') {
                    ++p;
                }
                if (is_digit(at(p))) {
                    pos_ = p;
                    while (is_digit(at(pos_))) {
                        ++pos_;
                    }
                }
            }
        }
        if (at(pos_) == 'n') {
            ++pos_;
        }
        if (is_ident_start(at(pos_))) {
            throw Error(ErrorCode::LexError, "identifier directly after number", pos_);
        }
    }

    void scan_string(char quote) {
        const std::size_t begin = pos_;
        ++pos_;
        while (true) {
            if (pos_ >= src_.size()) {
                throw Error(ErrorCode::LexError, "unterminated string literal", begin);
            }
            const unsigned char c = at(pos_);
            if (c == static_cast<unsigned char>(quote)) {
                ++pos_;
                return;
            }
            if (c == '\n' || c == '\r') {
                throw Error(ErrorCode::LexError, "unterminated string literal", begin);
            }
            if (c == '\\') {
                pos_ += 2;
                // \r\n line continuation
                if (at(pos_ - 1) == '\r' && at(pos_) == '\n') {
                    ++pos_;
                }
                continue;
            }
            ++pos_;
        }
    }

    void scan_template() {
        const std::size_t begin = pos_;
        ++pos_;
        while (true) {
            if (pos_ >= src_.size()) {
                throw Error(ErrorCode::LexError, "unterminated template literal", begin);
            }
            const unsigned char c = at(pos_);
            if (c == '`') {
                ++pos_;
                return;
            }
            if (c == '\\') {
                pos_ += 2;
                continue;
            }
            if (c == '$' && at(pos_ + 1) == '{') {
                pos_ += 2;
                scan_substitution(begin);
                continue;
            }
            ++pos_;
        }
    }

    // Consumes tokens up to and including the '}' closing a ${ substitution.
    void scan_substitution(std::size_t template_begin) {
        int depth = 0;
        const bool saved = regex_allowed_;
        regex_allowed_ = true;
        while (true) {
            if (pos_ >= src_.size()) {
                throw Error(ErrorCode::LexError, "unterminated template literal", template_begin);
            }
            Token t = next();
            if (t.kind == TokenKind::Punctuator) {
                if (t.text == "{") {
                    ++depth;
                } else if (t.text == "}") {
                    if (depth == 0) {
                        break;
                    }
                    --depth;
                }
            }
        }
        regex_allowed_ = saved;
    }

    void scan_regex() {
        const std::size_t begin = pos_;
        ++pos_;
        bool in_class = false;
        while (true) {
            const unsigned char c = at(pos_);
            if (pos_ >= src_.size() || c == '\n' || c == '\r') {
                throw Error(ErrorCode::LexError, "unterminated regex literal", begin);
            }
            if (c == '\\') {
                pos_ += 2;
                continue;
            }
            if (c == '[') {
                in_class = true;
            } else if (c == ']') {
                in_class = false;
            } else if (c == '/' && !in_class) {
                ++pos_;
                break;
            }
            ++pos_;
        }
        while (is_ident_part(at(pos_))) {
            ++pos_;
        }
    }
};

}  // namespace

bool is_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view text) {
    return Lexer(text).run();
}

std::vector<TemplatePart> split_template(std::string_view token_text) {
    return Lexer(token_text).split_template();
}

}  // namespace iocbench::js
