#include <iostream>

#include "scv/cli.hpp"

int main(int argc, char** argv) { return scv::cli::run(argc, argv, std::cout, std::cerr); }
