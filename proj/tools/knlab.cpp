#include <iostream>

#include "knlab/cli.hpp"

int main(int argc, char** argv) { return knlab::run_cli(argc, argv, std::cout, std::cerr); }
