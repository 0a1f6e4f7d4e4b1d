#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    const char* cap = std::getenv("FGR_CAP");
    const auto result = fgr::cli::run({argv + 1, argv + argc}, cap ? cap : "");
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
