#include "cli.hpp"

int main(int argc, char** argv) { return radgab::cli::run(argc, argv); }
