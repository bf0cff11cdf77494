#include <iostream>

#include "summa/cli/app.hpp"

int main(int argc, char** argv) { return summa::cli::run_app(argc, argv, std::cout, std::cerr); }
