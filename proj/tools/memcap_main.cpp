#include "memcap/run.hpp"

int main(int argc, char** argv) { return memcap::cli_main(argc, argv); }
