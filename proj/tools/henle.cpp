/// @file henle.cpp
/// @brief Command-line entry point.

#include "henle/cli.hpp"

int main(int argc, char** argv) { return henle::run_command(argc, argv); }
