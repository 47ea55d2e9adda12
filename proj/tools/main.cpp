#include <iostream>

#include "sqbsm/cli.hpp"

int main(int argc, char** argv) { return sqbsm::cli::run(argc, argv, std::cout, std::cerr); }
