#include "cli_core.hpp"
int main(int argc, char** argv) { return semiclassica::cli::run_cli(argc, argv); }
