#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geamkit::cli {

/// Exit codes: 0 success, 2 domain or validation failure, 3 I/O or parse
/// failure.
enum ExitCode : int { kOk = 0, kDomainError = 2, kIoError = 3 };

/// Entry point shared by the executable and the tests. JSON artifacts go to
/// `out` unless -o is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geamkit::cli
