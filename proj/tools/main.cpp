#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return t2p::cli::run(argc, argv, std::cout, std::cerr); }
