#include <iostream>

#include "rotobh/cli.hpp"

int main(int argc, char** argv) { return rotobh::cli::run(argc, argv, std::cout, std::cerr); }
