#include "pbp/cli.hpp"

int main(int argc, char** argv) { return pbp::cli_main(argc, argv); }
