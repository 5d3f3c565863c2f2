#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trigsum::cli {

/// Runs one `trigsum` invocation; args excludes the program name.
/// Returns the process exit code: 0 success, 1 usage or domain error, 2 disagreement.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trigsum::cli
