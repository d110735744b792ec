#include <iostream>

#include "lincat/cli.hpp"

int main(int argc, char** argv) { return lincat::cli::run(argc, argv, std::cout); }
