#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "wtfc/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return wtfc::run_cli(args, std::cout, std::cerr, [](char const* name) { return std::getenv(name); });
}
