#include <iostream>
#include <string>
#include <vector>

#include "dampqda/cli.hpp"

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv, argv + argc);
    return dampqda::cli::main(args, std::cout, std::cerr);
}
