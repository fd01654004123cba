#include "lao/cli/commands.hpp"

int main(int argc, char** argv) { return lao::cli::run_cli(argc, argv); }
