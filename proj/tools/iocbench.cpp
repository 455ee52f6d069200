#include "iocbench/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return iocbench::cli::run_cli({argv, argv + argc}, std::cout, std::cerr);
}
