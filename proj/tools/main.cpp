#include <iostream>

#include "runner.hpp"

int main(int argc, char** argv) { return aro::cli::cli_main(argc, argv, std::cout, std::cerr); }
