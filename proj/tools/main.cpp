#include <iostream>

#include "uc/cli/app.hpp"

int main(int argc, char** argv) { return uc::cli::run(argc, argv, std::cout, std::cerr); }
