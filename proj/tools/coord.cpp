#include "coord/cli.hpp"

int main(int argc, char** argv) { return coord::cli::main(argc, argv); }
