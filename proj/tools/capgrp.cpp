#include <iostream>

#include "capgrp/cli.hpp"

int main(int argc, char** argv) { return capgrp::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
