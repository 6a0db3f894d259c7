#include <iostream>

#include "pptd/cli.hpp"

int main(int argc, char** argv) { return pptd::cli::run(argc, argv, std::cout, std::cerr); }
