#include "vmlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vmlab::cli::run(argc, argv, std::cout, std::cerr); }
