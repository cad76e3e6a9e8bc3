#include <iostream>

#include "metrecon/cli.hpp"

int main(int argc, char** argv) { return metrecon::run_cli(argc, argv, std::cout, std::cerr); }
