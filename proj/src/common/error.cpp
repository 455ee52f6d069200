#include "iocbench/error.hpp"

namespace iocbench {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::LexError: return "LEX_ERROR";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::ParseUnsupported: return "PARSE_UNSUPPORTED";
        case ErrorCode::ScopeError: return "SCOPE_ERROR";
        case ErrorCode::EmptyCorpus: return "EMPTY_CORPUS";
        case ErrorCode::IoError: return "IO_ERROR";
        case ErrorCode::DecodeError: return "DECODE_ERROR";
        case ErrorCode::PadError: return "PAD_ERROR";
        case ErrorCode::LenError: return "LEN_ERROR";
        case ErrorCode::TemplateError: return "TEMPLATE_ERROR";
        case ErrorCode::SchemaError: return "SCHEMA_ERROR";
        case ErrorCode::RuntimeError: return "RUNTIME_ERROR";
        case ErrorCode::AuthError: return "AUTH_ERROR";
        case ErrorCode::ExhaustedRetries: return "EXHAUSTED_RETRIES";
        case ErrorCode::ConfigError: return "CONFIG_ERROR";
    }
    return "UNKNOWN_ERROR";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message, std::size_t offset) {
    std::string out(to_string(code));
    out += ": ";
    out += message;
    if (offset != Error::npos) {
        out += " (at offset " + std::to_string(offset) + ")";
    }
    return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t offset)
    : std::runtime_error(format_message(code, message, offset)), code_(code), offset_(offset) {}

}  // namespace iocbench
