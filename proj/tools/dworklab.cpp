#include <iostream>

#include "dworklab/cli.hpp"

int main(int argc, char** argv) { return dworklab::run_cli(argc, argv, std::cout, std::cerr); }
