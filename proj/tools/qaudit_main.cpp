#include "qaudit/cli.hpp"

int main(int argc, char** argv) {
    return qaudit::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
