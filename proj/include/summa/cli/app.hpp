#pragma once

#include <iosfwd>

namespace summa::cli {

/// Entry point of the `summa` tool. Returns 0 on success, 1 on configuration
/// or usage errors and 2 on domain errors.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace summa::cli
