// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace panowarp::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kValidationError = 2,
  kIoError = 3,
};

/// Runs one `panowarp` invocation. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace panowarp::cli
