#include <iostream>

#include "capit/cli.hpp"

int main(int argc, char** argv) {
    return capit::cli_dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
