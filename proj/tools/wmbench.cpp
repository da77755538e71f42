#include <iostream>

#include "wmbench/cli/run.hpp"

int main(int argc, char** argv) { return wmbench::cli::run(argc, argv, std::cout, std::cerr); }
