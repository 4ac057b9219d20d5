#include <iostream>

#include "fastbf/cli.hpp"

int main(int argc, char** argv) { return fastbf::cli::run(argc, argv, std::cout, std::cerr); }
