#include <clubgood/cli.hpp>

int main(int argc, char** argv) { return clubgood::cli::main(argc, argv); }
