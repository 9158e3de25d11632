#include "diffuse/cli.hpp"

int main(int argc, char** argv) { return diffuse::cli::run(argc, argv); }
