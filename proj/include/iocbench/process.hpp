#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace iocbench {

struct ProcessResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string out;
    std::string err;
};

/// Runs argv[0] (looked up on PATH) with the given arguments, capturing
/// stdout and stderr. The child is killed once timeout elapses. Throws
/// Error(RuntimeError) when the program cannot be spawned.
ProcessResult run_process(const std::vector<std::string>& argv,
                          std::chrono::milliseconds timeout = std::chrono::seconds(30));

/// Whitespace-separated words of a command line. No quoting rules.
std::vector<std::string> split_command(const std::string& command);

}  // namespace iocbench
