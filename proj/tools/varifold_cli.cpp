#include <iostream>

#include "varifold/cli.hpp"

int main(int argc, char** argv) {
    return varifold::cli::run(argc, argv, std::cout, std::cerr);
}
