#pragma once

namespace dps {

/// Entry point of the command-line tool; returns the process exit code
/// (0 success, 2 input validation failure, 3 quadrature nonconvergence).
int run_cli(int argc, const char* const* argv);

} // namespace dps
