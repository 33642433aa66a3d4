#include "sklab/config.hpp"

int main(int argc, char** argv) { return sklab::cli_main(argc, argv); }
