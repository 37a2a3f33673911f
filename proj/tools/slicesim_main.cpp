#include <string>
#include <vector>

#include "slicesim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return slicesim::execute(args);
}
