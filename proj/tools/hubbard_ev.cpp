#include <iostream>

#include "hubbard/cli.hpp"

int main(int argc, char** argv) { return hubbard::run_cli(argc, argv, std::cout, std::cerr); }
