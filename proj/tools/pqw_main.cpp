#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "pqw/cli.h"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    pqw::CliEnv env = pqw::env_from_process();
    pqw::CliIo io{std::cin, std::cout, std::cerr, ::isatty(STDIN_FILENO) == 1};
    return pqw::run_command(args, env, io);
}
