#include <iostream>

#include "repfam/cli.hpp"

int main(int argc, char** argv) { return repfam::dispatch(argc, argv, std::cout, std::cerr); }
