#include <iostream>

#include "bathtag/cli.hpp"

int main(int argc, char** argv) {
    return bathtag::cli::run(argc, argv, std::cout, std::cerr);
}
