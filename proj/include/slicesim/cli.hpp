// cli.hpp -- run / compare / validate command entry points
#pragma once

#include <string>
#include <vector>

namespace slicesim {

// Executes a full command line (excluding the program name). Returns the
// process exit code: 0 on success, 1 on runtime failure, 2 on an invalid
// scenario.
int execute(const std::vector<std::string>& args);

}  // namespace slicesim
