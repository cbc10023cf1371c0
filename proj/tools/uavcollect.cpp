#include <iostream>

#include "uavcollect/cli.hpp"

int main(int argc, char** argv) { return uavcollect::run_cli(argc, argv, std::cout, std::cerr); }
