#include "commands.hpp"

int main(int argc, char** argv) { return fracwave::cli::main(argc, argv); }
