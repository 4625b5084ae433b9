// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_TOOLS_CLI_APP_HPP
#define MAXMAJ_TOOLS_CLI_APP_HPP

#include <ostream>
#include <string>
#include <vector>

namespace maxmaj::cli
{

// Process exit codes.
enum ExitCode : int
{
  kOk = 0,
  kVerificationFailed = 1,
  kConfigError = 2,
  kStabilityError = 3,
  kDataMismatch = 4,
  kPrecondition = 5
};

// Runs the command line `args` (without the program name). Human-readable output goes to
// `out`, diagnostics to `err`.
int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace maxmaj::cli

#endif  // MAXMAJ_TOOLS_CLI_APP_HPP
