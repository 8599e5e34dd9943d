#include "barbilliards/cli_io.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return barbilliards::cli::run_cli(argc, argv, std::cout, std::cerr);
}
