#include <iostream>
#include <string>
#include <vector>

#include "vmp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return vmp::run_cli(args, std::cout, std::cerr);
}
