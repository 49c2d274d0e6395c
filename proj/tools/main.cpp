#include "dwtunnel/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dwt::run_cli(argc, argv, std::cout, std::cerr); }
