#include "cli.hpp"

int main(int argc, char** argv) { return soc_cascade::cli::dispatch(argc, argv); }
