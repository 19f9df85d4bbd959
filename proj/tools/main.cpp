#include <iostream>

#include "galrep/cli/cli.hpp"

int main(int argc, char** argv) { return galrep::cli::cli_dispatch(argc, argv, std::cout, std::cerr); }
