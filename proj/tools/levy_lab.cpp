#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return levycli::run(argc, argv, std::cout, std::cerr); }
