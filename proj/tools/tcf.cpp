#include <string>
#include <vector>

#include "tcf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tcf::cli_main(std::move(args));
}
