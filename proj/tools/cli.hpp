#pragma once

#include <iosfwd>

namespace mollify::cli {

/// Exit codes: 0 success, 1 usage or precondition, 2 indeterminate
/// classification, 3 numerical failure.
enum ExitCode : int { ok = 0, usage = 1, indeterminate = 2, numerical = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mollify::cli
