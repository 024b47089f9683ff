#include <iostream>

#include "ctsched/cli.hpp"

int main(int argc, char** argv) { return ctsched::cli::run(argc, argv, std::cout, std::cerr); }
