#pragma once

#include <string>
#include <vector>

namespace tcf {

// Entry point behind the tcf binary; args excludes the program name.
// Returns 0 on success, 1 on a failed validation or internal error, 2 on
// configuration errors, 3 on numerical failures, 4 on IO failures.
int cli_main(std::vector<std::string> args);

}  // namespace tcf
