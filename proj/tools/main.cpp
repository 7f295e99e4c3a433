#include <iostream>

#include "pclingam/cli.hpp"

int main(int argc, char** argv) { return pclingam::cli::run(argc, argv, std::cout, std::cerr); }
