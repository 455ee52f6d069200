#pragma once

namespace iocbench {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace iocbench
