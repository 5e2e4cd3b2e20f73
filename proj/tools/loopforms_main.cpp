#include "loopforms/cli.hpp"

int main(int argc, char** argv) { return loopforms::cli::main_entry(argc, argv); }
