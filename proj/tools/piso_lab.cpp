#include "commands.hpp"

int main(int argc, char** argv) { return piso::cli::run_cli(argc, argv); }
