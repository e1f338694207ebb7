#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hmcusp {

// In-process entry point of the command-line front end.  args holds the
// arguments after the program name.  Returns the process exit code:
//   0  success / all checks passed
//   1  a verification ran and failed
//   2  usage error (bad grammar, unknown flag, malformed value)
//   3  precondition error (e.g. a non-fundamental discriminant); in JSON
//      mode the document carries error.kind with the machine-readable cause
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmcusp
