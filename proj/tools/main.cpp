#include "cli.hpp"

int main(int argc, char** argv) { return gevrey::run_cli(argc, argv); }
