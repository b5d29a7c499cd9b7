#pragma once

#include <iosfwd>

namespace goigrid::cli {

/// Runs one command line and returns the process exit status: 0 on success,
/// 1 with a JSON error record on `err` when a stage fails, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace goigrid::cli
