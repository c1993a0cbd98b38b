#include "switchset/cli.hpp"

int main(int argc, char** argv) { return switchset::cli::run(argc, argv); }
