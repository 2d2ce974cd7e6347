#include <iostream>

#include "sparsemaps/cli.hpp"

int main(int argc, char** argv) { return sparsemaps::run_cli(argc, argv, std::cout, std::cerr); }
