#include "qsc/cli/runner.hpp"

#include <iostream>

int main(int argc, char** argv) { return qsc::cli::main_entry(argc, argv, std::cout, std::cerr); }
