#include <iostream>

#include "txh/cli.hpp"

int main(int argc, char** argv) { return txh::cli::run(argc, argv, std::cout, std::cerr); }
