#include <iostream>

#include "psdapprox/io/cli.hpp"

int main(int argc, char** argv) { return psdapprox::io::run_cli(argc, argv, std::cout, std::cerr); }
