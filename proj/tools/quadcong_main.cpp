#include <iostream>
#include <string>
#include <vector>

#include "quadcong/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return quadcong::run(args, std::cout, std::cerr);
}
