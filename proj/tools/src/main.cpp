#include <iostream>

#include "m2sg_cli/cli.hpp"

int main(int argc, char** argv) { return m2sg::cli::run(argc, argv, std::cout, std::cerr); }
