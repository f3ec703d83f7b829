#include <iostream>

#include "wigswap_cli/cli.hpp"

int main(int argc, char** argv) { return wigswap::cli::run(argc, argv, std::cout, std::cerr); }
