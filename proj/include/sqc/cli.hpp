#pragma once

#include <string>
#include <vector>

namespace sqc::cli {

// Exit codes: 0 success, 1 domain error (one-line "error: <kind>: <msg>"
// on stderr), 2 usage error. Results go to stdout, diagnostics to stderr.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace sqc::cli
