#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apdr
{

enum ExitCode : int
{
    exit_holds = 0,
    exit_refuted = 1,
    exit_unknown = 2,
    exit_usage = 3
};

// `args` excludes the program name.
int cli_main( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

int cli_main( int argc, char** argv );

} // namespace apdr
