#include <iostream>

#include "contlog/cli.hpp"

int main(int argc, char** argv) { return contlog::run_cli(argc, argv, std::cout, std::cerr); }
