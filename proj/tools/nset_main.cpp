#include <iostream>
#include <string>
#include <vector>

#include "nset/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return nset::dispatch(args, std::cout, std::cerr, std::cin);
}
