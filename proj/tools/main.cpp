#include <iostream>

#include <psi_opcalc/cli.hpp>

int main(int argc, char **argv)
{
    return psi_opcalc::cli::run(argc, argv, std::cout, std::cerr);
}
