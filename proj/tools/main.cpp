#include "cli.hpp"

int main(int argc, char** argv) { return otg::cli::dispatch(argc, argv); }
