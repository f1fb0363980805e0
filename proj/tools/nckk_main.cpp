#include <vector>

#include "nckk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nckk::cli::run(args);
}
