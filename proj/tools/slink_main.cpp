#include "slink/cli.hpp"

int main(int argc, char** argv) { return slink::cli::run(argc, argv); }
