#include "commands.hpp"

int main(int argc, char** argv) { return hypolog::cli::run(argc, argv); }
