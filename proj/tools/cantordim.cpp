#include <iostream>

#include "cantordim/cli.hpp"

int main(int argc, char** argv) { return cantordim::cli::run(argc, argv, std::cout, std::cerr); }
