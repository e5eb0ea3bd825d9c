#include <iostream>

#include "cbl_cli/cli.hpp"

int main(int argc, char** argv) { return cbl::cli::run_cli(argc, argv, std::cout, std::cerr); }
