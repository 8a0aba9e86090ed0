#include "cli.hpp"

int main(int argc, char** argv) { return afdm::cli::cli_main(argc, argv); }
