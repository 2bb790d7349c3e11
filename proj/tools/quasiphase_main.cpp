#include "quasiphase/cli.hpp"

int main(int argc, char** argv) { return quasiphase::cli_main(argc, argv); }
