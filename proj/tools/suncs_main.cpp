#include "suncs/cli.hpp"

int main(int argc, char** argv) { return suncs::cli::run(argc, argv); }
