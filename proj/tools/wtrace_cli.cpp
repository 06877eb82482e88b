#include "wtrace/cli.hpp"

int main(int argc, char** argv) { return wtrace::cli::main(argc, argv); }
