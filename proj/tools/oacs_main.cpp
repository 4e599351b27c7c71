#include <iostream>

#include "oacs/commands.hpp"

int main(int argc, char** argv) { return oacs::run_cli(argc, argv, std::cout, std::cerr); }
