#include "lexqa/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lexqa::run_cli(argc, argv, std::cout, std::cerr); }
