#include "assouad/cli.hpp"

int main(int argc, char** argv) { return assouad::cli::run(argc, argv); }
