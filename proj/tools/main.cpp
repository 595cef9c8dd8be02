#include "cli.hpp"

int main(int argc, char** argv)
{
    return hamqm::cli::run(argc, argv);
}
