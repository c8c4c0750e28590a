#include <iostream>

#include "cubim/cli.hpp"

int main(int argc, char** argv) {
    return cubim::run_cli(argc, argv, std::cout, std::cerr);
}
