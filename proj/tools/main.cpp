#include "h2path/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return h2path::run_cli(args, std::cout, std::cerr);
}
