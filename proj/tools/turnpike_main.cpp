#include <iostream>
#include <string>
#include <vector>

#include "turnpike/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return turnpike::run_cli(args, std::cout, std::cerr);
}
