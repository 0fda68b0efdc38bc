#include <iostream>

#include "conduct/cli.hpp"

int main(int argc, char** argv) { return conduct::run_cli(argc, argv, std::cout, std::cerr); }
