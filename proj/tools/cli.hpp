#pragma once

namespace gevrey {

inline constexpr const char* kToolVersion = "0.1.0";

/// Full command-line front end; returns the process exit code
/// (0 success, 1 verification failure, 2 usage or input error).
int run_cli(int argc, const char* const* argv);

}  // namespace gevrey
