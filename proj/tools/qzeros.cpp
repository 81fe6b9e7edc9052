#include <iostream>

#include "qhyp/cli/commands.hpp"

int main(int argc, char** argv) { return qhyp::cli::run_cli(argc, argv, std::cout, std::cerr); }
