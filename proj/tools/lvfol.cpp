#include <iostream>

#include "lvfol/cli.hpp"

int main(int argc, char** argv) { return lvfol::cli::run(argc, argv, std::cout, std::cerr); }
