#include "spinchaos/cli.hpp"

int main(int argc, char** argv) { return spinchaos::cli::run(argc, argv); }
