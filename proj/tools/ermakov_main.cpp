#include <iostream>

#include "ermakov/cli/app.hpp"

int main(int argc, char** argv) { return ermakov::cli::run(argc, argv, std::cout, std::cerr); }
