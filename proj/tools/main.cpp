#include <iostream>

#include "locallim/cli.hpp"

int main(int argc, char** argv) { return locallim::run_cli(argc, argv, std::cout, std::cerr); }
