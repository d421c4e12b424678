#include "nhq/cli.hpp"

int main(int argc, char** argv) { return nhq::cli_main(argc, argv); }
