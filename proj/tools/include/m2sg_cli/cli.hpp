#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "m2sg/error.hpp"

namespace m2sg::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kParse = 2,
  kCap = 3,  ///< cap exceeded, or an infinite group part with nothing declared
  kPrecondition = 4,
  kInternal = 5,
};

int exit_code_for(Errc code) noexcept;

/// Runs one subcommand; argv[0] is the program name.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace m2sg::cli
