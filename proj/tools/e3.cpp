#include <iostream>

#include "e3/cli.hpp"

int main(int argc, char** argv) { return e3::cli::run(argc, argv, std::cout, std::cerr); }
