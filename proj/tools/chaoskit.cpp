#include <iostream>

#include "chaoskit/cli.hpp"

int main(int argc, char** argv) { return chaoskit::cli::run(argc, argv, std::cout, std::cerr); }
