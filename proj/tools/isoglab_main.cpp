#include <iostream>

#include "isoglab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return isoglab::cli::run(args, std::cout, std::cerr);
}
