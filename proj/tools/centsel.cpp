#include "centsel/harness/cli.hpp"

int main(int argc, char** argv) { return centsel::harness::run_cli(argc, argv); }
