#include <iostream>
#include <string>
#include <vector>

#include "pltrack/runner.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pltrack::cli::run(args, std::cout, std::cerr);
}
