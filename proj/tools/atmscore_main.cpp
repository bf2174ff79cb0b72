#include <vector>

#include "atmscore/cli_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return atmscore::run_cli(args);
}
