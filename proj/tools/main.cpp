#include <iostream>

#include "watlab/pipeline.hpp"

int main(int argc, char** argv) { return watlab::run_cli(argc, argv, std::cout, std::cerr); }
