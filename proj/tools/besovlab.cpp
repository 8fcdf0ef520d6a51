#include "besovlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return besov::cli::run(argc, argv, std::cout, std::cerr); }
