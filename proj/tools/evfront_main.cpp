#include <iostream>
#include <string>
#include <vector>

#include "evfront/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return evfront::cli::run(args, std::cout, std::cerr);
}
