#include <iostream>

#include "innerlip/cli.hpp"

int main(int argc, char** argv) { return innerlip::cli::run(argc, argv, std::cout, std::cerr); }
