#include "abelfourier/cli.hpp"

int main(int argc, char** argv) { return abelfourier::run_cli(argc, argv); }
