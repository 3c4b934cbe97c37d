#include "kalmi/cli.hpp"

int main(int argc, char** argv) { return kalmi::run_cli(argc, argv); }
