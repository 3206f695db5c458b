#pragma once

#include <iosfwd>

namespace ffdet::cli {

/// Entry point of the `ffdet` command line. Exit codes: 0 success, 2 input
/// error, 3 machine-word overflow, 4 internal invariant violation.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffdet::cli
