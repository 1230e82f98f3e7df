#include <iostream>

#include "srone/cli.hpp"

int main(int argc, char** argv) { return srone::cli::run_command(argc, argv, std::cout, std::cerr); }
