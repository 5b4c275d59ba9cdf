/*
 * lgforge.cpp
 * -----------
 * Entry point of the lgforge command-line tool.
 */
#include <iostream>

#include "lgforge/cli.hpp"

int main(int argc, char** argv) {
    return lgforge::run_cli(argc, argv, std::cout, std::cerr);
}
