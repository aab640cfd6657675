#include <iostream>

#include "kellipse/cli.hpp"

int main(int argc, char** argv) { return kellipse::run(argc, argv, std::cout, std::cerr); }
