#include "tmpcfg/cli.hpp"

int main(int argc, char** argv) { return tmpcfg::cli::run(argc, argv); }
