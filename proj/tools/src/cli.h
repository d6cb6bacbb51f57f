#pragma once

#include <ostream>

namespace qramph::cli {

/// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
/// 1 anything else.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qramph::cli
