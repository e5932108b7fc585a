#include "ccsg/cli.hpp"

int main(int argc, char** argv) { return ccsg::run_cli(argc, argv); }
