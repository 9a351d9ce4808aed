#include "mastercount/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return mastercount::cli::run_cli(argc, argv, std::cout, std::cerr);
}
