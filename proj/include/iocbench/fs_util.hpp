#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace iocbench {

/// Reads a whole file. Throws Error(IoError) when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes text to a file, creating parent directories. Throws Error(IoError).
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace iocbench
