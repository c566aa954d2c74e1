#include <iostream>

#include "graphstate/cli.hpp"

int main(int argc, char** argv) { return gss::run_cli(argc, argv, std::cout, std::cerr); }
