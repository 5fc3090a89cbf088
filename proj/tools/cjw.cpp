#include "cjw/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cjw::run(argc, argv, std::cout, std::cerr); }
