#include <iostream>
#include <string>
#include <vector>

#include "irrsim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return irrsim::run_cli(args, std::cout, std::cerr);
}
