#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radgab::cli {

/// Runs one command. args excludes the program name, e.g. {"lattice", "--J", "4"}.
/// Returns 0 on success, 1 on invalid input, 2 when an iteration fails to converge.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

/// Parses a flat key=value file into "--key=value" tokens. Blank lines and
/// lines starting with '#' are ignored.
std::vector<std::string> config_tokens(const std::string& path);

}  // namespace radgab::cli
