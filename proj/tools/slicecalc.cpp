#include "slicecalc/cli.hpp"

int main(int argc, char** argv) { return slicecalc::cli::run(argc, argv); }
