#include "visnet/cli.hpp"

int main(int argc, char** argv) { return visnet::cli::run(argc, argv); }
