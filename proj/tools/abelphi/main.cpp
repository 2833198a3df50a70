#include <iostream>

#include "harness.hpp"

int main(int argc, char** argv) { return abelphi::harness::run(argc, argv, std::cout, std::cerr); }
