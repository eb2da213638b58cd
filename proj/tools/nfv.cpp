#include "nfv/cli.hpp"

int main(int argc, char** argv) { return nfv::cli::run(argc, argv); }
