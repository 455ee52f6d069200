#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iocbench {

enum class ErrorCode {
    LexError,
    ParseError,
    ParseUnsupported,
    ScopeError,
    EmptyCorpus,
    IoError,
    DecodeError,
    PadError,
    LenError,
    TemplateError,
    SchemaError,
    RuntimeError,
    AuthError,
    ExhaustedRetries,
    ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a stable error code. Lexer and parser errors also
/// carry the byte offset where the problem was detected.
class Error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(ErrorCode code, const std::string& message, std::size_t offset = npos);

    ErrorCode code() const noexcept { return code_; }
    std::size_t offset() const noexcept { return offset_; }
    bool has_offset() const noexcept { return offset_ != npos; }

private:
    ErrorCode code_;
    std::size_t offset_;
};

}  // namespace iocbench
