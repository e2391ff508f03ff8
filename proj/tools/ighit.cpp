#include <iostream>

#include "ighit/cli.hpp"

int main(int argc, char** argv) { return ighit::cli::run(argc, argv, std::cout, std::cerr); }
