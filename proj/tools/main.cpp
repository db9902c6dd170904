#include "grval/report.hpp"

#include <iostream>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    grval::RunResult rr = grval::run_command(args);
    std::cout << rr.output;
    return rr.exit_code;
}
