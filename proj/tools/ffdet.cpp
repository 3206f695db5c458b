#include <iostream>

#include "ffdet/cli/app.hpp"

int main(int argc, char** argv) { return ffdet::cli::run_cli(argc, argv, std::cout, std::cerr); }
