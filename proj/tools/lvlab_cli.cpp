#include "lvlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lvlab::dispatch(argc, argv, std::cout, std::cerr); }
