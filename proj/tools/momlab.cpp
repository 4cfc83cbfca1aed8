#include <iostream>

#include "momlab/cli.hpp"

int main(int argc, char** argv) { return momlab::run_cli(argc, argv, std::cout, std::cerr); }
