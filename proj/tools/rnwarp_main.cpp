#include <iostream>

#include "rnwarp/cli.hpp"

int main(int argc, char** argv) {
    return rnwarp::cli::run(argc, argv, std::cout, std::cerr);
}
