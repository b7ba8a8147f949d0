#include "apdr/cli.hpp"

int main( int argc, char** argv ) { return apdr::cli_main( argc, argv ); }
