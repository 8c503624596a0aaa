#include <iostream>

#include "ctllint/cli.hpp"

int main(int argc, char** argv) { return ctllint::cli::run(argc, argv, std::cout, std::cerr); }
