#include <iostream>

#include "indoamr/cli.hpp"

int main(int argc, char** argv) { return indoamr::run_cli(argc, argv, std::cout, std::cerr); }
