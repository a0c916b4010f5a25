#include <iostream>

#include "mpmrf/cli.hpp"

int main(int argc, char** argv) { return mpmrf::run_cli(argc, argv, std::cout, std::cerr); }
