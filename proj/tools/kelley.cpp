#include <iostream>

#include "kelley/cli.hpp"

int main(int argc, char** argv) { return kelley::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
