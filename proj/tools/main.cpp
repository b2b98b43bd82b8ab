#include "mixrobust/lab.hpp"

int main(int argc, char** argv) { return mixrobust::lab::run_cli(argc, argv); }
