#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddcap::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kDomainError = 3,
  kNumericalError = 4,
};

// Data goes to --output when given, otherwise to `out`. The key=value summary
// goes to `out` when --output is set and to `err` otherwise, so stdout stays
// clean for piping.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace ddcap::cli
