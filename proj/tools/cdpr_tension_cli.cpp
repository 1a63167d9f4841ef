#include "cdpr/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cdpr::cli::run(argc, argv, std::cout, std::cerr); }
