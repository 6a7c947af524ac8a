#include <string>
#include <vector>

#include "gmhd/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gmhd::cli::run(args);
}
