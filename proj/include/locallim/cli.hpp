#pragma once

#include <ostream>

namespace locallim {

/// Entry point of the `locallim` tool. Data goes to `out`, diagnostics to
/// `err`. Exit codes: 0 all rows pass, 1 a failed row, 2 usage or config
/// error, 3 budget exhausted.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace locallim
