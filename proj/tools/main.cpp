#include "sqc/cli.hpp"

int main(int argc, char** argv) { return sqc::cli::run(argc, argv); }
