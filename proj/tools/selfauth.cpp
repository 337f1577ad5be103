#include "selfauth/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return selfauth::cli::run(argc, argv, std::cout, std::cerr);
}
