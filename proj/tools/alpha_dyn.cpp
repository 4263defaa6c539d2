#include "alpha_dyn/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return alpha_dyn::cli::run(argc, argv, std::cout, std::cerr); }
