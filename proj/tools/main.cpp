#include <iostream>

#include "llw/cli.hpp"

int main(int argc, char** argv) { return llw::run_cli(argc, argv, std::cout, std::cerr); }
