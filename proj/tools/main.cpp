#include <iostream>
#include <string>
#include <vector>

#include "polyadic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return polyadic::cli::run(args, std::cout, std::cerr);
}
