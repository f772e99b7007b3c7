#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace koptest {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

inline std::string cli_binary() {
    const char* p = std::getenv("KOPCHECK_CLI");
    if (!p || !*p) {
        throw std::runtime_error("KOPCHECK_CLI is not set; run through ctest");
    }
    return p;
}

inline std::string temp_path(const std::string& stem) {
    static int counter = 0;
    std::ostringstream os;
    os << "/tmp/kopcheck_test_" << getpid() << "_" << counter++ << "_" << stem;
    return os.str();
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Runs the CLI with the given argument string, capturing stdout and stderr
// together. Returns the process exit code and the combined output.
inline CliResult run_cli(const std::string& args) {
    std::string out_file = temp_path("out.txt");
    std::string cmd = cli_binary() + " " + args + " >" + out_file + " 2>&1";
    int raw = std::system(cmd.c_str());
    CliResult r;
    if (raw == -1) {
        r.exit_code = -1;
    } else if (WIFEXITED(raw)) {
        r.exit_code = WEXITSTATUS(raw);
    } else {
        r.exit_code = 128;
    }
    r.out = slurp(out_file);
    std::remove(out_file.c_str());
    return r;
}

}  // namespace koptest
