#include "tempo_ncg/cli.hpp"

int main(int argc, char** argv) { return tempo_ncg::cli::run_main(argc, argv); }
