#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecprime::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int { kPrime = 0, kComposite = 1, kInconclusive = 2, kNotApplicable = 3 };

/// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ecprime::cli
