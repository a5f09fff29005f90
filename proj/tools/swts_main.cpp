#include <iostream>

#include "swts/cli.hpp"

int main(int argc, char** argv) { return swts::cli::run(argc, argv, {std::cout, std::cerr}); }
