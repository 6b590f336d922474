#include <iostream>

#include "lcover/cli.hpp"

int main(int argc, char** argv) { return lcover::cli::run(argc, argv, std::cout, std::cerr); }
