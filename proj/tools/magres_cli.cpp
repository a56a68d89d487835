/**
 * @file magres_cli.cpp
 * @brief Entry point of the magres-cli executable.
 */
#include <iostream>

#include "magres/cli.hpp"

int main(int argc, char** argv) { return magres::cli::run(argc, argv, std::cout, std::cerr); }
