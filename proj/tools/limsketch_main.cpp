#include <iostream>

#include "limsketch/cli.hpp"

int main(int argc, char** argv) {
    return limsketch::run_cli(argc, argv, std::cout, std::cerr);
}
