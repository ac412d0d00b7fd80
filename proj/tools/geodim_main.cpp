#include "geodim/cli.hpp"

int main(int argc, char** argv) { return geodim::cli_main(argc, argv); }
