#include <iostream>
#include <string>
#include <vector>

#include "shadowkit/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return shadowkit::run_command(args, std::cout, std::cerr);
}
