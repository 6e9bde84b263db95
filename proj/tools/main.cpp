#include "mrees/cli.hpp"

int main(int argc, char** argv) { return mrees::run_cli(argc, argv); }
