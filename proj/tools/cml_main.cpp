#include <iostream>

#include "cml/cli.hpp"

int main(int argc, char** argv) { return cml::cli_main(argc, argv, std::cout, std::cerr); }
