#include <iostream>

#include "wattribute/commands.hpp"

int main(int argc, char** argv) {
    return wattribute::cli::run(argc, argv, std::cout, std::cerr);
}
