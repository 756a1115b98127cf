#include "jdcalc/run.hpp"

#include <cstdio>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    jdcalc::RunResult r = jdcalc::run_command(args);
    std::fputs(r.output.c_str(), r.exit_code == 2 ? stderr : stdout);
    return r.exit_code;
}
