#include <iostream>

#include "swsc/cli.hpp"

int main(int argc, char** argv) { return swsc::run_cli(argc, argv, std::cout, std::cerr); }
