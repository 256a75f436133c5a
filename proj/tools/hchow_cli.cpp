/**
 * @file   hchow_cli.cpp
 * @brief  Entry point of the `hchow` command line tool.
 */
#include "hchow/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hchow::run_command(args, std::cout, std::cerr);
}
