#include <iostream>

#include "tropsev/cli.hpp"

int main(int argc, char** argv) { return tropsev::cli::run(argc, argv, std::cout, std::cerr); }
