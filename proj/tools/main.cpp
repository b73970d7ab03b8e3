#include "areosync/cli.hpp"

int main(int argc, char* argv[]) { return areosync::cli_main(argc, argv); }
