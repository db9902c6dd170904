// Command dispatch shared by the CLI binary and the golden-file tests.
// Reports are key-sorted JSON; identical invocations produce byte-identical
// output.
#pragma once

#include <string>
#include <vector>

namespace grval {

struct RunResult {
    int exit_code = 0;
    std::string output;  // JSON document followed by a newline
};

// args exclude the program name, e.g. {"lambda-check", "X^2 - t over GF(3)((t))"}
RunResult run_command(const std::vector<std::string>& args);

}  // namespace grval
