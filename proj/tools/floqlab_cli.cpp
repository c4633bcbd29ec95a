#include <vector>
#include <string>

#include "floqlab/runner.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return floqlab::cli::run(args);
}
