#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli_support {

struct Run {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::filesystem::path tmp_dir()
{
    const std::filesystem::path dir = CYBERDYN_TEST_TMP;
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string tmp(const std::string& name) { return (tmp_dir() / name).string(); }

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream(path, std::ios::binary) << text;
}

/// Runs the command-line tool with `args` (already shell-quoted where needed).
inline Run run(const std::string& args)
{
    const auto out = tmp("stdout.txt");
    const auto err = tmp("stderr.txt");
    const std::string command =
        std::string("'") + CYBERDYN_CLI + "' " + args + " > '" + out + "' 2> '" + err + "'";
    const int status = std::system(command.c_str());
    Run r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace cli_support
