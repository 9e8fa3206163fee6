#include <iostream>
#include <string>
#include <vector>

#include "cyclorank/interface.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cyclorank::cli_dispatch(args, std::cout, std::cerr);
}
