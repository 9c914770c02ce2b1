#include "nhjc/cli.hpp"

int main(int argc, char** argv) { return nhjc::cli::cli_main(argc, argv); }
